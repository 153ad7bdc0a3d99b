#include "sixv/params.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace sixv {

QInput QInput::root_of_unity(int N, int k) {
    QInput in;
    in.kind = Kind::RootOfUnity;
    in.N = N;
    in.k = k;
    return in;
}

QInput QInput::phase(double phase_over_pi) {
    QInput in;
    in.kind = Kind::PhaseOverPi;
    in.phase_over_pi = phase_over_pi;
    return in;
}

QInput QInput::cartesian(cplx v) {
    QInput in;
    in.kind = Kind::Cartesian;
    in.value = v;
    return in;
}

cplx QInput::eval() const {
    switch (kind) {
    case Kind::RootOfUnity:
        return std::polar(1.0, 2.0 * std::numbers::pi * k / N);
    case Kind::PhaseOverPi:
        return std::polar(1.0, std::numbers::pi * phase_over_pi);
    case Kind::Cartesian:
        return value;
    }
    return value;
}

int ModelParams::Nprime() const {
    if (!N) throw ConfigError("Nprime: N not set (generic q)");
    return (*N % 2 != 0) ? *N : *N / 2;
}

void ModelParams::validate() const {
    if (M < 1) throw ConfigError("ModelParams: M must be >= 1");
    if (static_cast<int>(zeta.size()) != M)
        throw ConfigError("ModelParams: zeta must have length M");
    for (const auto& z : zeta)
        if (z == cplx(0.0, 0.0)) throw ConfigError("ModelParams: zero inhomogeneity");
    if (q == cplx(0.0, 0.0)) throw ConfigError("ModelParams: q must be nonzero");
    if (N) {
        if (*N < 3) throw ConfigError("ModelParams: root-of-unity order must be > 2");
        cplx qn(1.0, 0.0);
        for (int i = 0; i < *N; ++i) qn *= q;
        if (std::abs(qn - cplx(1.0, 0.0)) > 1e-12)
            throw ConfigError("ModelParams: q^N differs from 1 by more than 1e-12");
        cplx qnp(1.0, 0.0);
        for (int i = 0; i < Nprime(); ++i) qnp *= q;
        if (std::min(std::abs(qnp - cplx(1.0, 0.0)), std::abs(qnp + cplx(1.0, 0.0))) > 1e-12)
            throw ConfigError("ModelParams: q^N' not +-1 within 1e-12");
    } else {
        // Low orders degenerate the (q - q^-1) denominators of the generic
        // constructions outright; higher-order q-integer zeros are checked
        // where they are actually inverted (spin_n_rep, fusion).
        cplx qk(1.0, 0.0);
        for (int k = 1; k <= 6; ++k) {
            qk *= q;
            if (std::abs(qk - cplx(1.0, 0.0)) <= 1e-6)
                throw ConfigError("ModelParams: q within 1e-6 of a root of unity of order " +
                                  std::to_string(k) + ", not generic");
        }
    }
}

ModelParams ModelParams::make(int M, const QInput& qin, cplx lambda, std::vector<cplx> zeta) {
    ModelParams p;
    p.M = M;
    p.q = qin.eval();
    p.lambda = lambda;
    p.zeta = zeta.empty() ? std::vector<cplx>(M, cplx(1.0, 0.0)) : std::move(zeta);
    if (qin.kind == QInput::Kind::RootOfUnity) p.N = qin.N;
    p.validate();
    return p;
}

ModelParams ModelParams::make_root_of_unity(int M, int N, int k, cplx lambda,
                                            std::vector<cplx> zeta) {
    return make(M, QInput::root_of_unity(N, k), lambda, std::move(zeta));
}

ModelParams ModelParams::make_generic(int M, cplx q, cplx lambda, std::vector<cplx> zeta) {
    return make(M, QInput::cartesian(q), lambda, std::move(zeta));
}

} // namespace sixv
