#include "doctest.h"

#include <cmath>
#include <numbers>

#include "sixv/operators.hpp"
#include "sixv/eigen.hpp"

using namespace sixv;

namespace {

double rel_diff(const CMatrix& a, const CMatrix& b) {
    return (a - b).frobenius() / std::max(1.0, std::max(a.frobenius(), b.frobenius()));
}

// Naive oracle: materialize every L on aux (x) (C^2)^{(x)M}, multiply the
// full matrices, apply the twist, then slice out the blocks.
CMatrix naive_block(const ModelParams& p, const std::vector<LWeights>& per_site,
                    const std::vector<cplx>& twist, int bi, int bj) {
    const int d = per_site[0].dim();
    const int dim = 1 << p.M;
    CMatrix full = CMatrix::identity(d * dim);
    for (int m = p.M; m >= 1; --m) {
        const LWeights& w = per_site[m - 1];
        CMatrix fm(d * dim, d * dim);
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b) {
                const int na = w.lo + a, nb = w.lo + b;
                CMatrix site(2, 2);
                if (a == b) {
                    site(0, 0) = w.al(na);
                    site(1, 1) = w.de(na);
                } else if (nb == na - 1) {
                    site(0, 1) = w.be(na);
                } else if (nb == na + 1) {
                    site(1, 0) = w.ga(na);
                } else {
                    continue;
                }
                CMatrix e(d, d);
                e(a, b) = 1.0;
                fm += kron(e, embed_site(site, m, p.M));
            }
        full = full * fm;
    }
    CMatrix blk(dim, dim);
    for (int s = 0; s < dim; ++s)
        for (int t = 0; t < dim; ++t) blk(s, t) = full(bi * dim + s, bj * dim + t);
    if (!twist.empty()) blk *= twist[bi];
    return blk;
}

CMatrix cyclic_shift(int M) {
    const int dim = 1 << M;
    CMatrix s(dim, dim);
    for (int b = 0; b < dim; ++b) {
        const int top = (b >> (M - 1)) & 1;
        const int rotated = ((b << 1) & (dim - 1)) | top;
        s(rotated, b) = 1.0;
    }
    return s;
}

} // namespace

TEST_CASE("monodromy blocks at M=1 are the site L elements") {
    const ModelParams p = ModelParams::make_root_of_unity(1, 3, 1, cplx(0.8, 0.1));
    const cplx mu(1.3, 0.2), w(0.7, 0.4);
    const BlockMonodromy g = monodromy_q_mu(p, mu, w, false);
    const LWeights lw = l_rootofunity(w / p.zeta[0], mu, p);
    for (int n = 0; n < 3; ++n) {
        CHECK(std::abs(g.block(n, n)(0, 0) - lw.al(n)) < 1e-14);
        CHECK(std::abs(g.block(n, n)(1, 1) - lw.de(n)) < 1e-14);
        if (n > 0) CHECK(std::abs(g.block(n, n - 1)(0, 1) - lw.be(n)) < 1e-14);
        if (n < 2) CHECK(std::abs(g.block(n, n + 1)(1, 0) - lw.ga(n)) < 1e-14);
    }
}

TEST_CASE("MPO monodromy matches the naive dense product at M=2, N'=3") {
    const ModelParams p =
        ModelParams::make_root_of_unity(2, 3, 1, cplx(0.75, 0.21), {cplx(1.1, 0.0), cplx(0.9, 0.3)});
    const cplx mu(1.21, -0.33), w(0.67, 0.18);
    std::vector<LWeights> per_site;
    for (int m = 0; m < 2; ++m) per_site.push_back(l_rootofunity(w / p.zeta[m], mu, p));
    std::vector<cplx> twist(3);
    for (int n = 0; n < 3; ++n) twist[n] = ipow(p.lambda, -2 * n);

    const BlockMonodromy g = monodromy_q_mu(p, mu, w, true);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const CMatrix expect = naive_block(p, per_site, twist, i, j);
            CHECK((g.block(i, j) - expect).max_abs() < 1e-13);
        }
}

TEST_CASE("aux_trace with explicit weights reproduces Q_mu") {
    const ModelParams p = ModelParams::make_root_of_unity(2, 3, 1, cplx(0.8, 0.0));
    const cplx mu(1.4, 0.1), w(0.52, 0.34);
    const BlockMonodromy untwisted = monodromy_q_mu(p, mu, w, false);
    std::vector<cplx> weights(3);
    for (int n = 0; n < 3; ++n) weights[n] = ipow(p.lambda, -2 * n);
    const CMatrix traced = aux_trace(untwisted, weights);
    const CMatrix direct = q_mu(p, mu, w).mat;
    CHECK((traced - direct).max_abs() < 1e-13);

    // linearity in the weights, exact
    std::vector<cplx> w2(3, cplx(0.0, 0.0));
    CHECK(aux_trace(untwisted, w2).max_abs() == 0.0);
    CHECK_THROWS_AS(aux_trace(untwisted, {cplx(1.0, 0.0)}), SizeError);
}

TEST_CASE("Q_mu vacuum action and pseudo-vacuum triangularity") {
    const ModelParams p = ModelParams::make_root_of_unity(3, 3, 1, cplx(0.77, 0.13));
    const cplx mu(1.12, 0.41), w(0.83, -0.27);
    const BlockMonodromy g = monodromy_q_mu(p, mu, w, true);
    for (int n = 0; n < 3; ++n) {
        // Q_nn |0> = lambda^{-2n} prod_m alpha_n(w/zeta_m) |0>
        cplx expect = ipow(p.lambda, -2 * n);
        for (int m = 0; m < p.M; ++m) expect *= l_rootofunity(w / p.zeta[m], mu, p).al(n);
        CHECK(std::abs(g.block(n, n)(0, 0) - expect) < 1e-13);
        for (int row = 1; row < (1 << p.M); ++row) CHECK(std::abs(g.block(n, n)(row, 0)) < 1e-13);
    }
    // Q_jk |0> = 0 for j > k
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < j; ++k) {
            double col0 = 0.0;
            for (int row = 0; row < (1 << p.M); ++row)
                col0 = std::max(col0, std::abs(g.block(j, k)(row, 0)));
            CHECK(col0 < 1e-13);
        }
}

TEST_CASE("transfer matrix vacuum eigenvalue and commutation") {
    const ModelParams p = ModelParams::make_generic(
        4, std::polar(1.0, std::numbers::pi / 5.0), cplx(0.7, 0.2),
        {cplx(1.0, 0.0), cplx(1.2, 0.1), cplx(0.9, -0.2), cplx(1.05, 0.0)});
    const cplx z(0.63, 0.29);
    const QuantumOperator t = transfer_t(p, z);

    const cplx vac_expect = p.lambda + ipow(p.q, p.M) / p.lambda * ratio_phi(p, z);
    CHECK(std::abs(t.mat(0, 0) - vac_expect) < 1e-13);
    for (int row = 1; row < 16; ++row) CHECK(std::abs(t.mat(row, 0)) < 1e-13);

    const QuantumOperator t2 = transfer_t(p, cplx(1.41, -0.52));
    CHECK(commutator_residual(t.mat, t2.mat) < 1e-12);
    CHECK(sz_conservation_residual(t.mat, p.M) < 1e-12);
}

TEST_CASE("[T(z), T(w)] at M=5 stays below 1e-12") {
    const ModelParams p = ModelParams::make_generic(5, std::polar(1.0, 0.41), cplx(1.1, -0.3));
    const CMatrix a = transfer_t(p, cplx(0.77, 0.31)).mat;
    const CMatrix b = transfer_t(p, cplx(1.23, -0.65)).mat;
    CHECK(commutator_residual(a, b) < 1e-12);
}

TEST_CASE("homogeneous T(1) at lambda=1 is the cyclic shift") {
    const ModelParams p = ModelParams::make_generic(2, std::polar(1.0, 0.37));
    const QuantumOperator t = transfer_t(p, cplx(1.0, 0.0));
    const CMatrix s = cyclic_shift(2);
    CHECK(rel_diff(t.mat, s) < 1e-14);
    CHECK(commutator_residual(t.mat, s) < 1e-14);
}

TEST_CASE("transfer spectrum matches transpose spectrum") {
    const ModelParams p = ModelParams::make_generic(4, std::polar(1.0, std::numbers::pi / 5.0));
    const CMatrix t = transfer_t(p, cplx(0.58, 0.22)).mat;
    const auto ev = eigenvalues(t);
    const auto evt = eigenvalues(t.transpose());
    for (std::size_t i = 0; i < ev.size(); ++i) CHECK(std::abs(ev[i] - evt[i]) < 1e-10);
}

TEST_CASE("Yang-Baxter generators A, B, C, D") {
    const ModelParams p = ModelParams::make_generic(4, std::polar(1.0, 0.44), cplx(0.9, 0.1));
    const cplx z1(0.71, 0.23), z2(1.32, -0.41);
    const YangBaxterOps g1 = abcd(p, z1), g2 = abcd(p, z2);

    // C |0> = 0
    for (int row = 0; row < 16; ++row) CHECK(std::abs(g1.C(row, 0)) < 1e-14);
    // A + D = T, entrywise exact combination
    const CMatrix t = transfer_t(p, z1).mat;
    CHECK((g1.A + g1.D - t).max_abs() < 1e-14);

    // A1 B2 = B2 A1 / b21 - c21 B1 A2 / b21
    const BoltzmannWeights w21 = weights_sixvertex(z2 / z1, p.q);
    const CMatrix lhs = g1.A * g2.B;
    const CMatrix rhs = g2.B * g1.A * (1.0 / w21.b) - g1.B * g2.A * (w21.c / w21.b);
    CHECK(rel_diff(lhs, rhs) < 1e-11);
}

TEST_CASE("[T, Q_mu] and mutual Q commutation at lambda^3 = 1") {
    ModelParams p = ModelParams::make_root_of_unity(4, 3, 1, cplx(1.0, 0.0));
    const cplx z(0.83, 0.37), w(0.61, -0.24), mu(1.31, 0.22), mu2(0.72, -0.18);
    CHECK(commutator_residual(transfer_t(p, z).mat, q_mu(p, mu, w).mat) < 1e-11);
    CHECK(sz_conservation_residual(q_mu(p, mu, w).mat, p.M) < 1e-12);

    const ModelParams ptw =
        ModelParams::make_root_of_unity(4, 3, 1, std::polar(1.0, 2.0 * std::numbers::pi / 3.0));
    CHECK(commutator_residual(q_mu(ptw, mu, w).mat, q_mu(ptw, mu2, cplx(1.22, 0.41)).mat) < 1e-10);
}

TEST_CASE("trace-level commutation identity for the (G1) blocks") {
    // sum_k (gamma_{k-1}/alpha_k B Q_{k,k-1} - gamma_k/delta_k Q_{k+1,k} B)
    //   = sum_k (beta_k/alpha_k Q_{k-1,k} C - beta_{k+1}/delta_k C Q_{k,k+1})
    const ModelParams p = ModelParams::make_root_of_unity(3, 3, 1, cplx(0.88, 0.21));
    const cplx mu(1.24, 0.37), w(0.74, 0.19), z(1.18, -0.35);
    const BlockMonodromy g = monodromy_q_mu(p, mu, w, true);
    const YangBaxterOps yb = abcd(p, z);
    const LWeights lw = l_rootofunity(w / z, mu, p);
    const int d = 3, dim = 1 << p.M;
    CMatrix lhs(dim, dim), rhs(dim, dim);
    for (int k = 0; k < d; ++k) {
        if (k - 1 >= 0 && lw.ga(k - 1) != cplx(0.0, 0.0))
            lhs += yb.B * g.block(k, k - 1) * (lw.ga(k - 1) / lw.al(k));
        if (k + 1 < d && lw.ga(k) != cplx(0.0, 0.0))
            lhs -= g.block(k + 1, k) * yb.B * (lw.ga(k) / lw.de(k));
        if (k - 1 >= 0 && lw.be(k) != cplx(0.0, 0.0))
            rhs += g.block(k - 1, k) * yb.C * (lw.be(k) / lw.al(k));
        if (k + 1 < d && lw.be(k + 1) != cplx(0.0, 0.0))
            rhs -= yb.C * g.block(k, k + 1) * (lw.be(k + 1) / lw.de(k));
    }
    CHECK(rel_diff(lhs, rhs) < 1e-10);
}

TEST_CASE("q_trunc window stability, commutation, spin reversal") {
    const ModelParams p = ModelParams::make_generic(4, std::polar(1.0, std::numbers::pi / 5.0),
                                                    cplx(0.7, 0.0));
    const cplx w(0.57, 0.23), r0(1.2, 0.3), r1(0.5, -0.2);

    const QuantumOperator q40 = q_trunc(p, r0, r1, w, 40);
    const QuantumOperator q50 = q_trunc(p, r0, r1, w, 50);
    CHECK((q40.mat - q50.mat).frobenius() < 1e-12 * q50.mat.frobenius());
    CHECK(q40.meta.tail_estimate < 1e-12 * q40.mat.frobenius());

    CHECK(commutator_residual(transfer_t(p, cplx(0.91, 0.44)).mat, q40.mat) < 1e-10);
    CHECK(sz_conservation_residual(q40.mat, p.M) < 1e-12);

    // R Q_<=(z q^-2, q; r0, r1, r2=1) R = Q_<=(z, q^-1; r0^-1, r2=1, r1)
    const cplx z(0.83, 0.19);
    const CMatrix rev = spin_reversal(p.M);
    const CMatrix lhs = rev * q_trunc(p, r0, r1, z / (p.q * p.q), 40).mat * rev;
    const CMatrix rhs = q_generic_traced(p, 1.0 / p.q, 1.0 / r0, 1.0, r1, z, 40).mat;
    CHECK((lhs - rhs).max_abs() < 1e-10 * std::max(1.0, rhs.max_abs()));

    // violated convergence bound is rejected
    const ModelParams pbad = ModelParams::make_generic(4, std::polar(1.0, std::numbers::pi / 5.0),
                                                       cplx(1.2, 0.0));
    CHECK_THROWS_AS(q_trunc(pbad, r0, r1, w, 40), BoundError);
}

TEST_CASE("q-oscillator operators") {
    const ModelParams p = ModelParams::make_generic(3, std::polar(1.0, 0.57), cplx(0.6, 0.1));
    const cplx w(0.66, 0.21);
    const QuantumOperator qp = q_osc(p, +1, w, 40);
    const QuantumOperator qm = q_osc(p, -1, w, 40);

    // Q^+ vacuum eigenvalue (-1)^M / (1 - lambda^2 q^{-M}) at n_B = 0
    const cplx expect = ((p.M % 2 == 0) ? 1.0 : -1.0) /
                        (1.0 - p.lambda * p.lambda * ipow(p.q, -p.M));
    CHECK(std::abs(qp.mat(0, 0) - expect) < 1e-12);

    // Q_<=(z; r0, r1) = (-1)^M r0^{-Sz} (1 - lambda^2 q^{-2Sz}) Q^+(z r1) Q^-(z) per sector
    const cplx r0(1.3, -0.2), r1(0.7, 0.4);
    const CMatrix ql = q_trunc(p, r0, r1, w, 45).mat;
    const CMatrix qpr1 = q_osc(p, +1, w * r1, 45).mat;
    double worst = 0.0;
    for (int twoSz = -p.M; twoSz <= p.M; twoSz += 2) {
        const double sz = 0.5 * twoSz;
        const cplx scal = ((p.M % 2 == 0) ? 1.0 : -1.0) * ipow(std::sqrt(r0), -twoSz) *
                          (1.0 - p.lambda * p.lambda * ipow(p.q, -twoSz));
        const CMatrix lhs = spin_sector_project(ql, sz, p.M);
        const CMatrix rhs =
            spin_sector_project(qpr1, sz, p.M) * spin_sector_project(qm.mat, sz, p.M) * scal;
        worst = std::max(worst, rel_diff(lhs, rhs));
    }
    CHECK(worst < 1e-9);
}

TEST_CASE("q-oscillator algebra relation on the window interior") {
    const ModelParams p = ModelParams::make_generic(2, std::polar(1.0, 0.57));
    const cplx w(0.9, 0.3);
    for (int sign : {+1, -1}) {
        const RepOps r = borel_rep(AuxRepSpec::q_osc(sign, w, 16), p);
        // e+ is the w-normalized raising image, e- the lowering one
        const CMatrix eplus = (sign > 0 ? r.e0 : r.e1) * (sign > 0 ? 1.0 / w : 1.0);
        const CMatrix eminus = (sign > 0 ? r.e1 : r.e0) * (sign > 0 ? 1.0 : 1.0 / w);
        const CMatrix comb = eplus * eminus * p.q - eminus * eplus * (1.0 / p.q);
        const cplx expect = 1.0 / (p.q - 1.0 / p.q);
        double worst = 0.0;
        for (int i = 2; i < 14; ++i) worst = std::max(worst, std::abs(comb(i, i) - expect));
        CHECK(worst < 1e-12);
    }
}

TEST_CASE("fusion matrices") {
    const ModelParams p = ModelParams::make_generic(4, std::polar(1.0, 0.44), cplx(0.85, 0.15),
                                                    {cplx(1.0, 0.0), cplx(1.1, 0.2),
                                                     cplx(0.95, -0.1), cplx(1.1, 0.0)});
    const cplx z(0.72, 0.26);

    // T^(1) = prod_m (z q^2 / zeta_m - 1) Id
    const QuantumOperator t1 = fusion_t(p, 1, z);
    CHECK(rel_diff(t1.mat, CMatrix::identity(16) * prod_zeta(p, z * p.q * p.q)) < 1e-14);

    // T^(2)(z q^-2) = q^{-M/2} T(z) prod_m (z q^2 / zeta_m - 1)
    const CMatrix lhs = fusion_t(p, 2, z / (p.q * p.q)).mat;
    const CMatrix rhs =
        transfer_t(p, z).mat * (ipow(std::sqrt(p.q), -p.M) * prod_zeta(p, z * p.q * p.q));
    CHECK(rel_diff(lhs, rhs) < 1e-11);

    // direct vs recursion for T^(3)
    const CMatrix direct = fusion_t(p, 3, z).mat;
    const CMatrix recur = fusion_t_recursive(p, 3, z).mat;
    CHECK(rel_diff(direct, recur) < 1e-10);

    CHECK(sz_conservation_residual(direct, p.M) < 1e-12);
    CHECK(commutator_residual(transfer_t(p, cplx(1.3, -0.4)).mat, direct) < 1e-10);
}

TEST_CASE("sector projection bookkeeping") {
    const ModelParams p = ModelParams::make_generic(4, std::polar(1.0, 0.39), cplx(0.75, 0.0));
    int total = 0;
    for (int twoSz = -4; twoSz <= 4; twoSz += 2) total += static_cast<int>(sector_basis(4, 0.5 * twoSz).size());
    CHECK(total == 16);
    CHECK(sector_basis(4, 2.0).size() == 1); // vacuum sector

    const CMatrix t = transfer_t(p, cplx(0.81, 0.27)).mat;
    // off-sector blocks vanish
    double off = 0.0;
    for (int b = 0; b < 16; ++b)
        for (int c = 0; c < 16; ++c)
            if (__builtin_popcount(unsigned(b)) != __builtin_popcount(unsigned(c)))
                off = std::max(off, std::abs(t(b, c)));
    CHECK(off < 1e-12);

    CHECK_THROWS_AS(sector_basis(4, 0.5), ConfigError);
}
