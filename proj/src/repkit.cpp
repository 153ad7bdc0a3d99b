#include "sixv/repkit.hpp"

#include <cmath>
#include <string>

namespace sixv {

cplx ipow(cplx base, long long e) {
    if (e < 0) return 1.0 / ipow(base, -e);
    cplx acc(1.0, 0.0), b = base;
    while (e > 0) {
        if (e & 1) acc *= b;
        b *= b;
        e >>= 1;
    }
    return acc;
}

cplx q_int(cplx q, long long m) { return (ipow(q, m) - ipow(q, -m)) / (q - 1.0 / q); }

cplx q_factorial(cplx q, int m) {
    cplx acc(1.0, 0.0);
    for (int k = 1; k <= m; ++k) acc *= q_int(q, k);
    return acc;
}

BoltzmannWeights weights_sixvertex(cplx z, cplx q) {
    const cplx denom = 1.0 - z * q * q;
    if (std::abs(denom) <= 1e-10)
        throw SingularArgumentError("weights_sixvertex: argument within 1e-10 of the pole zq^2 = 1");
    BoltzmannWeights w;
    w.z = z;
    w.a = 1.0;
    w.b = (1.0 - z) * q / denom;
    w.c = (1.0 - q * q) / denom;
    w.c_prime = w.c * z;
    return w;
}

CMatrix rmatrix(cplx z, cplx q) {
    const BoltzmannWeights w = weights_sixvertex(z, q);
    CMatrix r(4, 4);
    // basis |aux,site>: 00, 01, 10, 11
    r(0, 0) = w.a;
    r(1, 1) = w.b;
    r(2, 2) = w.b;
    r(3, 3) = w.a;
    r(1, 2) = w.c;       // <01|R|10> = c
    r(2, 1) = w.c_prime; // <10|R|01> = c'
    return r;
}

AuxRepSpec AuxRepSpec::root_of_unity_mu(cplx w, cplx mu) {
    AuxRepSpec s;
    s.kind = AuxKind::RootOfUnityMu;
    s.w = w;
    s.mu = mu;
    return s;
}

AuxRepSpec AuxRepSpec::borel(cplx w, cplx r0, cplx r1, cplx r2, int K, int m_o) {
    AuxRepSpec s;
    s.kind = AuxKind::FourParamBorel;
    s.w = w;
    s.r0 = r0;
    s.r1 = r1;
    s.r2 = r2;
    s.window_K = K;
    s.m_o = m_o;
    return s;
}

AuxRepSpec AuxRepSpec::q_osc(int sign, cplx w, int K) {
    AuxRepSpec s;
    s.kind = sign >= 0 ? AuxKind::QOscPlus : AuxKind::QOscMinus;
    s.w = w;
    s.r0 = 1.0;
    s.r1 = sign >= 0 ? 1.0 : 0.0;
    s.r2 = sign >= 0 ? 0.0 : 1.0;
    s.window_K = K;
    s.m_o = 0;
    return s;
}

AuxRepSpec AuxRepSpec::spin_n(cplx w, int n) {
    AuxRepSpec s;
    s.kind = AuxKind::SpinN;
    s.w = w;
    s.n = n;
    return s;
}

RepOps fundamental_rep(cplx z, cplx q) {
    if (q == cplx(0.0, 0.0)) throw ConfigError("fundamental_rep: q = 0");
    if (z == cplx(0.0, 0.0)) throw SingularArgumentError("fundamental_rep: z = 0 (f0 undefined)");
    RepOps r;
    r.dim = 2;
    r.e1 = pauli_plus();
    r.f1 = pauli_minus();
    r.e0 = pauli_minus() * z;
    r.f0 = pauli_plus() * (1.0 / z);
    r.qh1 = CMatrix(2, 2);
    r.qh1(0, 0) = q;
    r.qh1(1, 1) = 1.0 / q;
    r.qh1_inv = CMatrix(2, 2);
    r.qh1_inv(0, 0) = 1.0 / q;
    r.qh1_inv(1, 1) = q;
    r.qh0 = r.qh1_inv;
    r.qh0_inv = r.qh1;
    r.h_prime_diag = {1.0, -1.0}; // h on the fundamental
    return r;
}

RepOps rootofunity_rep(const AuxRepSpec& spec, const ModelParams& p) {
    if (!p.at_root_of_unity()) throw ConfigError("rootofunity_rep: N not set");
    if (spec.mu == cplx(0.0, 0.0)) throw ConfigError("rootofunity_rep: mu = 0");
    const int d = p.Nprime();
    const cplx q = p.q, mu = spec.mu, w = spec.w;
    const cplx qmqi = q - 1.0 / q;

    RepOps r;
    r.dim = d;
    r.e1 = CMatrix(d, d);
    r.f1 = CMatrix(d, d);
    r.qh1 = CMatrix(d, d);
    r.qh1_inv = CMatrix(d, d);
    r.h_prime_diag.resize(d);
    for (int n = 0; n < d; ++n) {
        if (n + 1 < d) r.f1(n + 1, n) = 1.0;
        if (n > 0) {
            const cplx num = mu + 1.0 / mu - mu * ipow(q, 2 * n) - ipow(q, -2 * n) / mu;
            r.e1(n - 1, n) = num / (qmqi * qmqi);
        }
        const cplx qh = ipow(q, -2 * n - 1) / mu;
        r.qh1(n, n) = qh;
        r.qh1_inv(n, n) = 1.0 / qh;
        r.h_prime_diag[n] = -2.0 * n;
    }
    r.e0 = r.f1 * w;
    r.f0 = r.e1 * (1.0 / w);
    r.qh0 = r.qh1_inv;
    r.qh0_inv = r.qh1;
    return r;
}

RepOps borel_rep(const AuxRepSpec& spec, const ModelParams& p) {
    if (p.at_root_of_unity()) throw ConfigError("borel_rep: requires generic q");
    const int K = spec.window_K;
    if (K < 4) throw ConfigError("borel_rep: window K must be >= 4");
    const cplx q = p.q, w = spec.w, r0 = spec.r0, r1 = spec.r1, r2 = spec.r2;
    const cplx qmqi = q - 1.0 / q;
    const int lo = spec.m_o - K + 1, hi = spec.m_o;

    auto e0_factor = [&](int n) {
        return (r1 * r2 + 1.0 - r1 * ipow(q, 2 * n) - r2 * ipow(q, -2 * n)) / (qmqi * qmqi);
    };
    // The window is invariant iff e0 annihilates the top edge state.
    double scale = 0.0;
    for (int n = lo; n <= hi; ++n) scale = std::max(scale, std::abs(e0_factor(n)));
    const cplx leak = e0_factor(hi);
    if (std::abs(leak) > 1e-10 * std::max(1.0, scale))
        throw WindowError("borel_rep: window not invariant, e0 leaks at n = " + std::to_string(hi) +
                          " with coefficient magnitude " + std::to_string(std::abs(leak * w)));

    RepOps r;
    r.dim = K;
    r.lo = lo;
    r.has_f = false;
    r.e0 = CMatrix(K, K);
    r.e1 = CMatrix(K, K);
    r.qh1 = CMatrix(K, K);
    r.qh1_inv = CMatrix(K, K);
    r.h_prime_diag.resize(K);
    for (int n = lo; n <= hi; ++n) {
        const int j = n - lo;
        if (j > 0) r.e1(j - 1, j) = 1.0; // e1|n> = |n-1>
        if (j + 1 < K) r.e0(j + 1, j) = w * e0_factor(n);
        const cplx qh = r0 * ipow(q, -2 * n);
        r.qh1(j, j) = qh;
        r.qh1_inv(j, j) = 1.0 / qh;
        r.h_prime_diag[j] = -2.0 * n;
    }
    r.qh0 = r.qh1_inv;
    r.qh0_inv = r.qh1;
    return r;
}

RepOps spin_n_rep(cplx z, int n, cplx q) {
    if (n < 1) throw ConfigError("spin_n_rep: n must be >= 1");
    for (int k = 1; k <= n; ++k)
        if (std::abs(q_int(q, k)) < 1e-12)
            throw SingularArgumentError("spin_n_rep: q-integer [" + std::to_string(k) +
                                        "]_q vanishes (root-of-unity obstruction)");
    const int d = n + 1;
    RepOps r;
    r.dim = d;
    r.e1 = CMatrix(d, d);
    r.f1 = CMatrix(d, d);
    r.qh1 = CMatrix(d, d);
    r.qh1_inv = CMatrix(d, d);
    r.h_prime_diag.resize(d);
    for (int m = 0; m <= n; ++m) {
        if (m > 0) r.e1(m - 1, m) = q_int(q, n - m + 1);
        if (m < n) r.f1(m + 1, m) = q_int(q, m + 1);
        r.qh1(m, m) = ipow(q, n - 2 * m);
        r.qh1_inv(m, m) = ipow(q, 2 * m - n);
        r.h_prime_diag[m] = static_cast<double>(n - 2 * m);
    }
    r.e0 = r.f1 * z;
    r.f0 = r.e1 * (1.0 / z);
    r.qh0 = r.qh1_inv;
    r.qh0_inv = r.qh1;
    return r;
}

namespace {

double rel_residual(const CMatrix& lhs, const CMatrix& rhs, int margin, int dim) {
    // Max-entry residual, optionally restricted to interior indices.
    double worst = 0.0;
    for (int i = margin; i < dim - margin; ++i)
        for (int j = margin; j < dim - margin; ++j) worst = std::max(worst, std::abs(lhs(i, j) - rhs(i, j)));
    double scale = std::max(lhs.max_abs(), rhs.max_abs());
    return worst / std::max(1.0, scale);
}

} // namespace

AlgebraReport verify_algebra_relations(const RepOps& r, cplx q, int interior_margin) {
    AlgebraReport rep;
    const int d = r.dim;
    const cplx q2 = q * q;
    auto conj_check = [&](const char* name, const CMatrix& qh, const CMatrix& qhinv,
                          const CMatrix& x, cplx factor, int margin) {
        if (x.empty()) return;
        rep.relations.push_back({name, rel_residual(qh * x * qhinv, x * factor, margin, d)});
    };

    conj_check("qh1 e1 qh1^-1 = q^2 e1", r.qh1, r.qh1_inv, r.e1, q2, interior_margin);
    conj_check("qh1 e0 qh1^-1 = q^-2 e0", r.qh1, r.qh1_inv, r.e0, 1.0 / q2, interior_margin);
    conj_check("qh0 e1 qh0^-1 = q^-2 e1", r.qh0, r.qh0_inv, r.e1, 1.0 / q2, interior_margin);
    conj_check("qh0 e0 qh0^-1 = q^2 e0", r.qh0, r.qh0_inv, r.e0, q2, interior_margin);
    if (r.has_f) {
        conj_check("qh1 f1 qh1^-1 = q^-2 f1", r.qh1, r.qh1_inv, r.f1, 1.0 / q2, interior_margin);
        conj_check("qh1 f0 qh1^-1 = q^2 f0", r.qh1, r.qh1_inv, r.f0, q2, interior_margin);
    }
    rep.relations.push_back(
        {"[qh0, qh1] = 0", rel_residual(r.qh0 * r.qh1, r.qh1 * r.qh0, interior_margin, d)});
    rep.relations.push_back(
        {"qh1 qh1^-1 = 1", rel_residual(r.qh1 * r.qh1_inv, CMatrix::identity(d), 0, d)});

    // Cubic Serre relations; products move the index by up to 4, so truncated
    // windows need a wider interior margin.
    const int serre_margin = interior_margin > 0 ? interior_margin + 3 : 0;
    const cplx three = q_int(q, 3);
    auto serre = [&](const char* name, const CMatrix& a, const CMatrix& b) {
        if (a.empty() || b.empty()) return;
        const CMatrix a2 = a * a, a3 = a2 * a;
        const CMatrix lhs = a3 * b - (a2 * b * a) * three + (a * b * a2) * three;
        rep.relations.push_back({name, rel_residual(lhs, b * a3, serre_margin, d)});
    };
    serre("Serre e0 e1", r.e0, r.e1);
    serre("Serre e1 e0", r.e1, r.e0);
    if (r.has_f) {
        serre("Serre f0 f1", r.f0, r.f1);
        serre("Serre f1 f0", r.f1, r.f0);
    }

    for (const auto& rel : rep.relations) {
        if (rel.residual > rep.max_residual) {
            rep.max_residual = rel.residual;
            rep.worst = rel.name;
        }
    }
    return rep;
}

LWeights l_rootofunity(cplx x, cplx mu, const ModelParams& p) {
    const int d = p.Nprime();
    const cplx q = p.q;
    const cplx sq = std::sqrt(q), smu = std::sqrt(mu); // principal branch
    LWeights w;
    w.family = LFamily::G1;
    w.lo = 0;
    w.hi = d - 1;
    w.x = x;
    w.alpha.resize(d);
    w.beta.assign(d, cplx(0.0, 0.0));
    w.gamma.assign(d, cplx(0.0, 0.0));
    w.delta.resize(d);
    for (int n = 0; n < d; ++n) {
        w.alpha[n] = x / smu * ipow(q, -n) * sq - smu * ipow(q, n) * sq;
        w.delta[n] = x * smu * ipow(q, n + 1) * sq - ipow(q, -n - 1) * sq / smu;
        if (n < d - 1) {
            const cplx casimir = mu + 1.0 / mu - mu * ipow(q, 2 * n + 2) - ipow(q, -2 * n - 2) / mu;
            w.gamma[n] = smu * ipow(q, n + 1) * sq * casimir / (q - 1.0 / q);
        }
        if (n > 0) w.beta[n] = x * (q - 1.0 / q) / smu * ipow(q, -n) * sq;
    }
    return w;
}

LWeights l_generic(cplx x, cplx r0, cplx r1, cplx r2, int K, cplx q, int m_o) {
    if (K < 2) throw ConfigError("l_generic: window too small");
    const cplx sr0 = std::sqrt(r0);
    LWeights w;
    w.family = LFamily::G2;
    w.lo = m_o - K + 1;
    w.hi = m_o;
    w.x = x;
    w.alpha.resize(K);
    w.beta.assign(K, cplx(0.0, 0.0));
    w.gamma.assign(K, cplx(0.0, 0.0));
    w.delta.resize(K);
    for (int n = w.lo; n <= w.hi; ++n) {
        const int j = n - w.lo;
        w.alpha[j] = x * r2 / sr0 * ipow(q, -n + 2) - ipow(q, n) / sr0;
        w.delta[j] = x * r1 * sr0 * ipow(q, n) - sr0 * ipow(q, -n);
        if (n < w.hi) w.gamma[j] = (q - 1.0 / q) / sr0 * ipow(q, n + 1);
        if (n > w.lo)
            w.beta[j] = x * sr0 * ipow(q, -n + 1) *
                        (r1 * r2 + 1.0 - r1 * ipow(q, 2 * n - 2) - r2 * ipow(q, -2 * n + 2)) /
                        (q - 1.0 / q);
    }
    return w;
}

FusionL l_fusion_blocks(cplx w, int n, cplx q) {
    const RepOps rep = spin_n_rep(w, n, q); // validates q-integers
    const int d = n + 1;
    const cplx rho_p = w * q, rho_m = 1.0;
    const cplx sq = std::sqrt(q);
    CMatrix qh_half(d, d), qh_half_inv(d, d);
    for (int m = 0; m <= n; ++m) {
        qh_half(m, m) = ipow(sq, n - 2 * m);
        qh_half_inv(m, m) = ipow(sq, 2 * m - n);
    }
    FusionL out;
    out.n = n;
    out.w = w;
    out.q = q;
    out.b00 = qh_half * rho_p - qh_half_inv * rho_m;
    out.b01 = (qh_half * rep.f1) * (rho_p * (q - 1.0 / q));
    out.b10 = (rep.e1 * qh_half_inv) * (rho_m * (q - 1.0 / q));
    out.b11 = qh_half_inv * rho_p - qh_half * rho_m;
    return out;
}

CMatrix l_fusion(cplx w, int n, cplx q) {
    const FusionL b = l_fusion_blocks(w, n, q);
    const int d = n + 1;
    CMatrix m(2 * d, 2 * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            m(i, j) = b.b00(i, j);
            m(i, d + j) = b.b01(i, j);
            m(d + i, j) = b.b10(i, j);
            m(d + i, d + j) = b.b11(i, j);
        }
    return m;
}

} // namespace sixv
