#include "doctest.h"

#include <cmath>
#include <numbers>

#include "sixv/cmatrix.hpp"
#include "sixv/params.hpp"
#include "sixv/repkit.hpp"

using namespace sixv;

namespace {

// R acting on factors (i,j) of C^2 (x) C^2 (x) C^2.
CMatrix embed_r3(const CMatrix& r, int i, int j) {
    CMatrix out(8, 8);
    auto bits = [](int s, int pos) { return (s >> (2 - pos)) & 1; }; // pos 0,1,2
    for (int s = 0; s < 8; ++s)
        for (int t = 0; t < 8; ++t) {
            int other = 3 - i - j;
            if (bits(s, other) != bits(t, other)) continue;
            out(s, t) = r(bits(s, i) * 2 + bits(s, j), bits(t, i) * 2 + bits(t, j));
        }
    return out;
}

double rel_diff(const CMatrix& a, const CMatrix& b) {
    return (a - b).frobenius() / std::max(1.0, std::max(a.frobenius(), b.frobenius()));
}

// Delta and Delta^op of a generator on rep1 (x) rep2.
CMatrix cop(const CMatrix& gen1, const CMatrix& qh1, const CMatrix& gen2, int d2) {
    return kron(gen1, CMatrix::identity(d2)) + kron(qh1, gen2);
}
CMatrix cop_op(const CMatrix& gen1, const CMatrix& gen2, const CMatrix& qh2, int d1) {
    return kron(CMatrix::identity(d1), gen2) + kron(gen1, qh2);
}

CMatrix lweights_matrix(const LWeights& w) {
    // full matrix on aux (x) site, aux most significant
    const int d = w.dim();
    CMatrix m(2 * d, 2 * d);
    for (int n = w.lo; n <= w.hi; ++n) {
        const int a = n - w.lo;
        m(2 * a + 0, 2 * a + 0) = w.al(n);
        m(2 * a + 1, 2 * a + 1) = w.de(n);
        if (n - 1 >= w.lo) m(2 * a + 0, 2 * (a - 1) + 1) = w.be(n);
        if (n + 1 <= w.hi) m(2 * a + 1, 2 * (a + 1) + 0) = w.ga(n);
    }
    return m;
}

} // namespace

TEST_CASE("six-vertex weights at special points") {
    const cplx q = std::polar(1.0, std::numbers::pi / 5.0);
    const BoltzmannWeights w1 = weights_sixvertex(1.0, q);
    CHECK(std::abs(w1.a - 1.0) == 0.0);
    CHECK(std::abs(w1.b) < 1e-15);
    CHECK(std::abs(w1.c - 1.0) < 1e-15);
    CHECK(std::abs(w1.c_prime - 1.0) < 1e-15);

    const BoltzmannWeights w0 = weights_sixvertex(0.0, q);
    CHECK(std::abs(w0.b - q) < 1e-15);
    CHECK(std::abs(w0.c - (1.0 - q * q)) < 1e-15);
    CHECK(std::abs(w0.c_prime) == 0.0);

    CHECK_THROWS_AS(weights_sixvertex(1.0 / (q * q), q), SingularArgumentError);
}

TEST_CASE("R matrix entries and the z=1 permutation point") {
    const cplx q = std::polar(1.0, std::numbers::pi / 5.0);
    const cplx z(0.37, 0.21);
    const BoltzmannWeights w = weights_sixvertex(z, q);
    const CMatrix r = rmatrix(z, q);
    CHECK(r(1, 2) == w.c);
    CHECK(r(2, 1) == w.c_prime);

    const CMatrix p = rmatrix(1.0, q);
    CMatrix perm(4, 4);
    perm(0, 0) = perm(3, 3) = 1.0;
    perm(1, 2) = perm(2, 1) = 1.0;
    CHECK(rel_diff(p, perm) < 1e-14);
}

TEST_CASE("R satisfies the Yang-Baxter equation") {
    const cplx q = std::polar(1.0, std::numbers::pi / 5.0);
    const cplx z1(0.5, 0.0), z2(0.31, 0.44);
    // R12(z1) R13(z1 z2) R23(z2) = R23(z2) R13(z1 z2) R12(z1)
    const CMatrix r12 = embed_r3(rmatrix(z1, q), 0, 1);
    const CMatrix r13 = embed_r3(rmatrix(z1 * z2, q), 0, 2);
    const CMatrix r23 = embed_r3(rmatrix(z2, q), 1, 2);
    const CMatrix lhs = r12 * r13 * r23;
    const CMatrix rhs = r23 * r13 * r12;
    CHECK(rel_diff(lhs, rhs) < 1e-13);
}

TEST_CASE("fundamental representation") {
    const cplx q = std::polar(1.0, std::numbers::pi / 7.0);
    const cplx z(0.8, 0.1);
    const RepOps r = fundamental_rep(z, q);
    CHECK((r.qh1 * r.qh0 - CMatrix::identity(2)).max_abs() < 1e-15);
    CHECK(((r.e1 * r.f1 - r.f1 * r.e1) - pauli_z()).max_abs() < 1e-15);
    const AlgebraReport rep = verify_algebra_relations(r, q);
    CHECK(rep.max_residual < 1e-14);
    CHECK_THROWS_AS(fundamental_rep(cplx(0.0, 0.0), q), SingularArgumentError);
}

TEST_CASE("root-of-unity representation at N' = 3") {
    const ModelParams p = ModelParams::make_root_of_unity(2, 3);
    const cplx q = p.q, mu(1.21, 0.43), w(0.9, 0.2);
    const RepOps r = rootofunity_rep(AuxRepSpec::root_of_unity_mu(w, mu), p);
    CHECK(r.dim == 3);

    // <0| e1 |1> from the matrix-element formula at n = 1
    const cplx expect =
        (mu + 1.0 / mu - mu * q * q - 1.0 / (mu * q * q)) / ((q - 1.0 / q) * (q - 1.0 / q));
    CHECK(std::abs(r.e1(0, 1) - expect) < 1e-14);

    // f1 is the shift and is nilpotent on the truncated space
    const CMatrix f3 = r.f1 * r.f1 * r.f1;
    CHECK(f3.max_abs() == 0.0);

    const AlgebraReport rep = verify_algebra_relations(r, q);
    CHECK(rep.max_residual < 1e-12);

    CHECK_THROWS(rootofunity_rep(AuxRepSpec::root_of_unity_mu(w, cplx(0.0, 0.0)), p));
}

TEST_CASE("root-of-unity central values at mu -> q^N'") {
    const ModelParams p = ModelParams::make_root_of_unity(2, 3);
    const cplx q = p.q;
    const cplx mu = ipow(q, 3); // = 1 at N = 3
    const RepOps r = rootofunity_rep(AuxRepSpec::root_of_unity_mu(cplx(0.7, 0.0), mu), p);

    CMatrix qh_pow = CMatrix::identity(3);
    for (int i = 0; i < 3; ++i) qh_pow = qh_pow * r.qh1;
    const cplx expect_qh = ipow(q, -3) * ipow(mu, -3);
    CHECK((qh_pow - CMatrix::identity(3) * expect_qh).max_abs() < 1e-12);
    CHECK(std::abs(expect_qh - 1.0) < 1e-12);

    // Casimir c = q^{h+1} + q^{-h-1} + (q-q^-1)^2 f e  ->  (mu + 1/mu) Id
    const CMatrix cas = r.qh1 * q + r.qh1_inv * (1.0 / q) +
                        (r.f1 * r.e1) * ((q - 1.0 / q) * (q - 1.0 / q));
    const cplx cval = mu + 1.0 / mu;
    CHECK((cas - CMatrix::identity(3) * cval).max_abs() < 1e-12);
    CHECK(std::abs(cval - (ipow(q, 3) + ipow(q, -3))) < 1e-12);
}

TEST_CASE("Borel representation window") {
    const ModelParams p = ModelParams::make_generic(2, std::polar(1.0, 0.613));
    const cplx q = p.q;

    // r2 = 1, m_o = 0: e0 matrix element out of the top state vanishes
    const RepOps r = borel_rep(AuxRepSpec::borel(cplx(0.8, 0.1), 1.3, cplx(0.4, 0.2), 1.0, 8), p);
    CHECK(r.dim == 8);
    CHECK_FALSE(r.has_f);
    // qh1 diagonal entry at n: r0 q^{-2n}
    for (int j = 0; j < 8; ++j) {
        const int n = r.lo + j;
        CHECK(std::abs(r.qh1(j, j) - 1.3 * ipow(q, -2 * n)) < 1e-12);
    }

    const AlgebraReport rep = verify_algebra_relations(
        borel_rep(AuxRepSpec::borel(cplx(0.8, 0.1), 1.3, cplx(0.4, 0.2), 1.0, 20), p), q, 2);
    CHECK(rep.max_residual < 1e-12);

    // A non-truncating r2 leaks out of the window
    CHECK_THROWS_AS(borel_rep(AuxRepSpec::borel(cplx(0.8, 0.1), 1.3, 0.7, cplx(1.7, 0.3), 8), p),
                    WindowError);
}

TEST_CASE("spin-n representation") {
    const cplx q = std::polar(1.0, std::numbers::pi / 7.0);
    const cplx z(0.9, -0.2);

    const RepOps r1 = spin_n_rep(z, 1, q);
    const RepOps f = fundamental_rep(z, q);
    CHECK((r1.e1 - f.e1).max_abs() < 1e-14);
    CHECK((r1.qh1 - f.qh1).max_abs() < 1e-14);

    const RepOps r2 = spin_n_rep(z, 2, q);
    CHECK(std::abs(r2.e1(0, 1) - (q + 1.0 / q)) < 1e-14); // [2]_q at (n=2, m=1)
    for (int m = 0; m <= 2; ++m) CHECK(std::abs(r2.qh1(m, m) - ipow(q, 2 - 2 * m)) < 1e-14);

    const AlgebraReport rep = verify_algebra_relations(r2, q);
    CHECK(rep.max_residual < 1e-12);

    // q-integer obstruction at a root of unity
    const ModelParams proot = ModelParams::make_root_of_unity(2, 3);
    CHECK_THROWS(spin_n_rep(z, 3, proot.q));
}

TEST_CASE("verify_algebra_relations localizes a corrupted generator") {
    const cplx q = std::polar(1.0, std::numbers::pi / 7.0);
    RepOps r = fundamental_rep(cplx(0.8, 0.1), q);
    r.e1(1, 0) += 0.37; // corrupt with an off-pattern entry
    const AlgebraReport rep = verify_algebra_relations(r, q);
    CHECK(rep.max_residual > 1e-3);
    CHECK(rep.worst.find("e1") != std::string::npos);
}

TEST_CASE("G1 L-operator weights and intertwining") {
    const ModelParams p = ModelParams::make_root_of_unity(2, 3);
    const cplx q = p.q, mu(1.17, 0.29), w(0.73, 0.11), z(1.31, -0.42);
    const cplx x = w / z;
    const LWeights lw = l_rootofunity(x, mu, p);

    const cplx sq = std::sqrt(q), smu = std::sqrt(mu);
    CHECK(std::abs(lw.al(0) - (x / smu * sq - smu * sq)) < 1e-14); // alpha_0
    CHECK(lw.be(0) == cplx(0.0, 0.0));                            // beta_0 = 0
    CHECK(lw.ga(2) == cplx(0.0, 0.0));                            // gamma_{N'-1} absent

    // L Delta(x) = Delta^op(x) L on pi_w^mu (x) pi_z^(1)
    const RepOps aux = rootofunity_rep(AuxRepSpec::root_of_unity_mu(w, mu), p);
    const RepOps fun = fundamental_rep(z, q);
    const CMatrix L = lweights_matrix(lw);
    double worst = 0.0;
    worst = std::max(worst, rel_diff(L * cop(aux.e0, aux.qh0, fun.e0, 2),
                                     cop_op(aux.e0, fun.e0, fun.qh0, 3) * L));
    worst = std::max(worst, rel_diff(L * cop(aux.e1, aux.qh1, fun.e1, 2),
                                     cop_op(aux.e1, fun.e1, fun.qh1, 3) * L));
    worst = std::max(worst, rel_diff(L * kron(aux.qh1, fun.qh1), kron(aux.qh1, fun.qh1) * L));
    CHECK(worst < 1e-12);
}

TEST_CASE("G2 L-operator weights and interior intertwining") {
    const ModelParams p = ModelParams::make_generic(2, std::polar(1.0, 0.613));
    const cplx q = p.q, w(0.82, 0.17), z(1.21, -0.33);
    const cplx r0(1.4, 0.2), r1(0.6, -0.3), r2(1.0, 0.0);
    const cplx x = w / z;
    const int K = 12;
    const LWeights lw = l_generic(x, r0, r1, r2, K, q);

    // gamma_n is independent of x
    const LWeights lw2 = l_generic(2.0 * x, r0, r1, r2, K, q);
    for (int n = lw.lo; n < lw.hi; ++n) {
        CHECK(std::abs(lw.ga(n) - lw2.ga(n)) < 1e-14);
        CHECK(std::abs(lw.ga(n) - (q - 1.0 / q) / std::sqrt(r0) * ipow(q, n + 1)) < 1e-12);
    }
    // r2 = 1: beta at the top edge vanishes (invariant subspace boundary)
    CHECK(std::abs(lw.be(lw.hi)) > 1e-10);
    // the formula's zero sits at the index just above the window; check it directly
    const cplx top_factor = r1 * r2 + 1.0 - r1 * ipow(q, 2 * (lw.hi + 1) - 2) -
                            r2 * ipow(q, -2 * (lw.hi + 1) + 2);
    CHECK(std::abs(top_factor) < 1e-14);

    // intertwining on interior indices
    const RepOps aux = borel_rep(AuxRepSpec::borel(w, r0, r1, r2, K), p);
    const RepOps fun = fundamental_rep(z, q);
    const CMatrix L = lweights_matrix(lw);
    auto interior = [&](const CMatrix& a, const CMatrix& b) {
        double worst = 0.0;
        for (int i = 3 * 2; i < (K - 3) * 2; ++i)
            for (int j = 3 * 2; j < (K - 3) * 2; ++j) worst = std::max(worst, std::abs(a(i, j) - b(i, j)));
        return worst / std::max(1.0, std::max(a.max_abs(), b.max_abs()));
    };
    CHECK(interior(L * cop(aux.e0, aux.qh0, fun.e0, 2), cop_op(aux.e0, fun.e0, fun.qh0, K) * L) <
          1e-12);
    CHECK(interior(L * cop(aux.e1, aux.qh1, fun.e1, 2), cop_op(aux.e1, fun.e1, fun.qh1, K) * L) <
          1e-12);
}

TEST_CASE("fusion L-operator blocks") {
    const cplx q = std::polar(1.0, std::numbers::pi / 7.0);
    const cplx w(0.77, 0.31);

    const FusionL b = l_fusion_blocks(w, 1, q);
    // <0|L|1> = wq (q - q^-1) pi(q^{h/2}) pi(f1) at n = 1
    const RepOps r = spin_n_rep(w, 1, q);
    const cplx sq = std::sqrt(q);
    CMatrix qhh(2, 2);
    qhh(0, 0) = sq;
    qhh(1, 1) = 1.0 / sq;
    const CMatrix expect01 = (qhh * r.f1) * (w * q * (q - 1.0 / q));
    CHECK((b.b01 - expect01).max_abs() < 1e-13);

    // <1|L|0> carries rho_- = 1 and is independent of w
    const FusionL b2 = l_fusion_blocks(w * 3.0, 1, q);
    CHECK((b.b10 - b2.b10).max_abs() < 1e-14);

    // n = 1 fusion L is the six-vertex R up to one overall constant
    const CMatrix rm = rmatrix(w, q);
    cplx kappa(0.0, 0.0);
    bool first = true;
    double worst = 0.0;
    const CMatrix* blocks[2][2] = {{&b.b00, &b.b01}, {&b.b10, &b.b11}};
    for (int s = 0; s < 2; ++s)
        for (int t = 0; t < 2; ++t)
            for (int a = 0; a < 2; ++a)
                for (int bb = 0; bb < 2; ++bb) {
                    const cplx lval = (*blocks[s][t])(a, bb);
                    const cplx rval = rm(a * 2 + s, bb * 2 + t);
                    if (std::abs(rval) < 1e-14) {
                        worst = std::max(worst, std::abs(lval));
                        continue;
                    }
                    if (first) {
                        kappa = lval / rval;
                        first = false;
                    } else {
                        worst = std::max(worst, std::abs(lval - kappa * rval));
                    }
                }
    CHECK(worst < 1e-12);
}
