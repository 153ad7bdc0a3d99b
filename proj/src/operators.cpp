#include "sixv/operators.hpp"

#include "sixv/kernels.hpp"

#include <cmath>
#include <string>

namespace sixv {

CMatrix aux_trace(const BlockMonodromy& q, const std::vector<cplx>& weights) {
    if (static_cast<int>(weights.size()) != q.aux_dim)
        throw SizeError("aux_trace: weight count differs from aux dimension");
    const CMatrix& first = q.block(0, 0);
    CMatrix acc(first.rows(), first.cols());
    for (int n = 0; n < q.aux_dim; ++n) {
        const CMatrix& blk = q.block(n, n);
        if (!blk.empty()) acc += blk * weights[n];
    }
    return acc;
}

namespace {

// dst (2^m) += a (2^{m-1}) (x) s (2x2); the new site is the least
// significant factor, keeping site 1 leftmost.
void kron_acc(CMatrix& dst, const CMatrix& a, const std::array<cplx, 4>& s) {
    const int n = a.rows();
    for (int i = 0; i < n; ++i)
        for (int u = 0; u < 2; ++u) {
            cplx* drow = dst.data() + static_cast<std::size_t>(2 * i + u) * dst.cols();
            const cplx* arow = a.data() + static_cast<std::size_t>(i) * n;
            for (int j = 0; j < n; ++j) {
                const cplx av = arow[j];
                if (av == cplx(0.0, 0.0)) continue;
                if (s[2 * u] != cplx(0.0, 0.0)) drow[2 * j] += av * s[2 * u];
                if (s[2 * u + 1] != cplx(0.0, 0.0)) drow[2 * j + 1] += av * s[2 * u + 1];
            }
        }
}

bool site_zero(const std::array<cplx, 4>& s) {
    return s[0] == cplx(0.0, 0.0) && s[1] == cplx(0.0, 0.0) && s[2] == cplx(0.0, 0.0) &&
           s[3] == cplx(0.0, 0.0);
}

// Propagate one auxiliary column j through all M sites; returns the vector
// of final operators indexed by the auxiliary row (empty = unreachable).
std::vector<CMatrix> propagate_column(int M, int aux_dim, int band, const SiteBlockFn& site,
                                      int j) {
    std::vector<CMatrix> cur(aux_dim), next(aux_dim);
    cur[j] = CMatrix(1, 1);
    cur[j](0, 0) = 1.0;
    for (int m = 1; m <= M; ++m) {
        const int dim = 1 << m;
        for (auto& x : next) x = CMatrix();
        for (int a = 0; a < aux_dim; ++a) {
            bool any = false;
            CMatrix acc;
            for (int b = std::max(0, a - band); b <= std::min(aux_dim - 1, a + band); ++b) {
                if (cur[b].empty()) continue;
                const std::array<cplx, 4> s = site(m, a, b);
                if (site_zero(s)) continue;
                if (!any) {
                    acc = CMatrix(dim, dim);
                    any = true;
                }
                kron_acc(acc, cur[b], s);
            }
            if (any) next[a] = std::move(acc);
        }
        cur.swap(next);
    }
    return cur;
}

} // namespace

BlockMonodromy build_monodromy(int M, int aux_dim, int band, const SiteBlockFn& site,
                               const std::vector<cplx>& aux_twist) {
    BlockMonodromy out;
    out.aux_dim = aux_dim;
    out.band = band;
    out.blocks.assign(static_cast<std::size_t>(aux_dim) * aux_dim, CMatrix());
    const int dim = 1 << M;
#pragma omp parallel for schedule(dynamic)
    for (int j = 0; j < aux_dim; ++j) {
        std::vector<CMatrix> col = propagate_column(M, aux_dim, band, site, j);
        for (int a = 0; a < aux_dim; ++a) {
            CMatrix blk = col[a].empty() ? CMatrix(dim, dim) : std::move(col[a]);
            if (!aux_twist.empty()) blk *= aux_twist[a];
            out.block(a, j) = std::move(blk);
        }
    }
    return out;
}

CMatrix build_traced(int M, int aux_dim, int band, const SiteBlockFn& site,
                     const std::vector<cplx>& trace_weights) {
    const int dim = 1 << M;
    std::vector<CMatrix> diag(aux_dim);
#pragma omp parallel for schedule(dynamic)
    for (int j = 0; j < aux_dim; ++j) {
        if (trace_weights[j] == cplx(0.0, 0.0)) continue;
        std::vector<CMatrix> col = propagate_column(M, aux_dim, band, site, j);
        if (!col[j].empty()) diag[j] = std::move(col[j]);
    }
    CMatrix acc(dim, dim);
    for (int j = 0; j < aux_dim; ++j)
        if (!diag[j].empty()) kern::add_scaled(acc, trace_weights[j], diag[j]);
    return acc;
}

namespace {

SiteBlockFn transfer_site_fn(const ModelParams& p, cplx z, std::vector<BoltzmannWeights>& store) {
    store.clear();
    store.reserve(p.M);
    for (int m = 1; m <= p.M; ++m) store.push_back(weights_sixvertex(z / p.zeta[m - 1], p.q));
    return [&store](int m, int a, int b) -> std::array<cplx, 4> {
        const BoltzmannWeights& w = store[m - 1];
        if (a == 0 && b == 0) return {w.a, 0.0, 0.0, w.b};
        if (a == 1 && b == 1) return {w.b, 0.0, 0.0, w.a};
        if (a == 0 && b == 1) return {0.0, 0.0, w.c, 0.0};
        return {0.0, w.c_prime, 0.0, 0.0}; // a == 1, b == 0
    };
}

SiteBlockFn lweight_site_fn(const std::vector<LWeights>& per_site) {
    return [&per_site](int m, int a, int b) -> std::array<cplx, 4> {
        const LWeights& w = per_site[m - 1];
        const int n = w.lo + a, nb = w.lo + b;
        if (a == b) return {w.al(n), 0.0, 0.0, w.de(n)};
        if (nb == n - 1) return {0.0, w.be(n), 0.0, 0.0};
        if (nb == n + 1) return {0.0, 0.0, w.ga(n), 0.0};
        return {0.0, 0.0, 0.0, 0.0};
    };
}

} // namespace

QuantumOperator transfer_t(const ModelParams& p, cplx z) {
    std::vector<BoltzmannWeights> store;
    const SiteBlockFn site = transfer_site_fn(p, z, store);
    const std::vector<cplx> weights{p.lambda, 1.0 / p.lambda};
    QuantumOperator op;
    op.mat = build_traced(p.M, 2, 1, site, weights);
    op.meta = {"T", z, "", 0.0};
    return op;
}

YangBaxterOps abcd(const ModelParams& p, cplx z) {
    std::vector<BoltzmannWeights> store;
    const SiteBlockFn site = transfer_site_fn(p, z, store);
    const std::vector<cplx> twist{p.lambda, 1.0 / p.lambda};
    BlockMonodromy grid = build_monodromy(p.M, 2, 1, site, twist);
    YangBaxterOps ops;
    ops.A = std::move(grid.block(0, 0));
    ops.B = std::move(grid.block(0, 1));
    ops.C = std::move(grid.block(1, 0));
    ops.D = std::move(grid.block(1, 1));
    return ops;
}

BlockMonodromy monodromy_q_mu(const ModelParams& p, cplx mu, cplx w, bool with_twist) {
    const int d = p.Nprime();
    std::vector<LWeights> per_site;
    per_site.reserve(p.M);
    for (int m = 0; m < p.M; ++m) per_site.push_back(l_rootofunity(w / p.zeta[m], mu, p));
    std::vector<cplx> twist;
    if (with_twist) {
        twist.resize(d);
        for (int n = 0; n < d; ++n) twist[n] = ipow(p.lambda, -2 * n);
    }
    return build_monodromy(p.M, d, 1, lweight_site_fn(per_site), twist);
}

BlockMonodromy monodromy_q_generic(const ModelParams& p, cplx r0, cplx r1, cplx r2, cplx w,
                                   int K, int m_o, bool with_twist) {
    std::vector<LWeights> per_site;
    per_site.reserve(p.M);
    for (int m = 0; m < p.M; ++m)
        per_site.push_back(l_generic(w / p.zeta[m], r0, r1, r2, K, p.q, m_o));
    std::vector<cplx> twist;
    if (with_twist) {
        twist.resize(K);
        const int lo = m_o - K + 1;
        for (int j = 0; j < K; ++j) twist[j] = ipow(p.lambda, -2 * (lo + j));
    }
    return build_monodromy(p.M, K, 1, lweight_site_fn(per_site), twist);
}

QuantumOperator q_mu(const ModelParams& p, cplx mu, cplx w) {
    const int d = p.Nprime();
    std::vector<LWeights> per_site;
    per_site.reserve(p.M);
    for (int m = 0; m < p.M; ++m) per_site.push_back(l_rootofunity(w / p.zeta[m], mu, p));
    std::vector<cplx> weights(d);
    for (int n = 0; n < d; ++n) weights[n] = ipow(p.lambda, -2 * n);
    QuantumOperator op;
    op.mat = build_traced(p.M, d, 1, lweight_site_fn(per_site), weights);
    op.meta = {"Qmu", w, "mu-family trace over Z_N'", 0.0};
    return op;
}

void check_qconv_bound(const ModelParams& p, cplx q_def) {
    const double aq = std::abs(q_def);
    const double bound = aq >= 1.0 ? std::pow(aq, -0.5 * p.M) : std::pow(aq, 0.5 * p.M);
    if (std::abs(p.lambda) * 1.1 > bound)
        throw BoundError("q_trunc: |lambda| = " + std::to_string(std::abs(p.lambda)) +
                         " violates the convergence bound |lambda| < |q|^{-+M/2} = " +
                         std::to_string(bound) + " (10% margin)");
}

namespace {

// Weighted trace over a Borel window with an explicit deformation
// parameter, plus a measured geometric tail estimate.
QuantumOperator window_traced(const ModelParams& p, cplx q_def, cplx r0, cplx r1, cplx r2,
                              cplx w, int K, int m_o, const std::string& family) {
    check_qconv_bound(p, q_def);
    const int lo = m_o - K + 1;
    std::vector<LWeights> per_site;
    per_site.reserve(p.M);
    for (int m = 0; m < p.M; ++m)
        per_site.push_back(l_generic(w / p.zeta[m], r0, r1, r2, K, q_def, m_o));
    const SiteBlockFn site = lweight_site_fn(per_site);

    const int dim = 1 << p.M;
    std::vector<CMatrix> diag(K);
#pragma omp parallel for schedule(dynamic)
    for (int j = 0; j < K; ++j) {
        std::vector<CMatrix> col = propagate_column(p.M, K, 1, site, j);
        if (!col[j].empty()) diag[j] = std::move(col[j]);
    }
    CMatrix acc(dim, dim);
    std::vector<double> contrib(K, 0.0);
    for (int j = 0; j < K; ++j) {
        const cplx wgt = ipow(p.lambda, -2 * (lo + j));
        if (!diag[j].empty()) {
            kern::add_scaled(acc, wgt, diag[j]);
            contrib[j] = std::abs(wgt) * diag[j].frobenius();
        }
    }

    // Tail beyond the window, estimated from the measured decay of the last
    // two diagonal contributions (deepest block is j = 0).
    double tail = 0.0;
    if (contrib[1] > 0.0 && contrib[0] > 0.0) {
        const double rho = contrib[0] / contrib[1];
        if (rho >= 1.0)
            throw WindowError(family + ": diagonal contributions grow towards the window edge, "
                                       "series not converging within the window");
        tail = contrib[0] * rho / (1.0 - rho);
    }
    const double norm = acc.frobenius();
    if (tail > 1e-12 * norm)
        throw WindowError(family + ": window K = " + std::to_string(K) +
                          " too small, tail estimate " + std::to_string(tail) + " exceeds 1e-12 * " +
                          std::to_string(norm) + "; increase K");

    QuantumOperator op;
    op.mat = std::move(acc);
    op.meta = {family, w, "window n in {" + std::to_string(lo) + ".." + std::to_string(m_o) + "}",
               tail};
    return op;
}

} // namespace

QuantumOperator q_trunc(const ModelParams& p, cplx r0, cplx r1, cplx w, int K) {
    return window_traced(p, p.q, r0, r1, cplx(1.0, 0.0), w, K, 0, "Qtrunc");
}

QuantumOperator q_osc(const ModelParams& p, int sign, cplx w, int K) {
    if (sign >= 0) return window_traced(p, p.q, 1.0, 1.0, 0.0, w, K, 0, "Qosc+");
    return window_traced(p, p.q, 1.0, 0.0, 1.0, w, K, 0, "Qosc-");
}

QuantumOperator q_generic_traced(const ModelParams& p, cplx q_def, cplx r0, cplx r1, cplx r2,
                                 cplx w, int K, int m_o) {
    return window_traced(p, q_def, r0, r1, r2, w, K, m_o, "Qwin");
}

QuantumOperator fusion_t(const ModelParams& p, int n, cplx z) {
    if (n < 1) throw ConfigError("fusion_t: n must be >= 1");
    QuantumOperator op;
    op.meta = {"Tfus", z, "degree " + std::to_string(n), 0.0};
    const int dim = 1 << p.M;
    if (n == 1) {
        op.mat = CMatrix::identity(dim) * prod_zeta(p, z * p.q * p.q);
        return op;
    }
    const int aux = n; // spin (n-1)/2, dimension n
    const cplx zfus = z * ipow(p.q, n);
    std::vector<FusionL> per_site;
    per_site.reserve(p.M);
    for (int m = 0; m < p.M; ++m) per_site.push_back(l_fusion_blocks(zfus / p.zeta[m], n - 1, p.q));
    SiteBlockFn site = [&per_site](int m, int a, int b) -> std::array<cplx, 4> {
        const FusionL& f = per_site[m - 1];
        return {f.b00(a, b), f.b01(a, b), f.b10(a, b), f.b11(a, b)};
    };
    std::vector<cplx> weights(aux);
    for (int a = 0; a < aux; ++a) weights[a] = ipow(p.lambda, (n - 1) - 2 * a);
    op.mat = build_traced(p.M, aux, 1, site, weights);
    return op;
}

QuantumOperator fusion_t_recursive(const ModelParams& p, int n, cplx z) {
    if (n < 1) throw ConfigError("fusion_t_recursive: n must be >= 1");
    const int dim = 1 << p.M;
    const cplx q2 = p.q * p.q;
    QuantumOperator op;
    op.meta = {"Tfus", z, "degree " + std::to_string(n) + " via fusion recursion", 0.0};
    if (n == 1) {
        op.mat = CMatrix::identity(dim) * prod_zeta(p, z * q2);
        return op;
    }
    // T^(2)(x) = q^{-M/2} T(x q^2) prod_m (x q^4 / zeta_m - 1)
    auto t2 = [&](cplx x) {
        const cplx scale = ipow(std::sqrt(p.q), -p.M) * prod_zeta(p, x * q2 * q2);
        return transfer_t(p, x * q2).mat * scale;
    };
    if (n == 2) {
        op.mat = t2(z);
        return op;
    }
    // Build upward with arguments arranged so the target lands at z:
    // T^(k+1)(x) = [T^(k)(xq^2) T^(2)(x) - T^(k-1)(xq^4) P(xq^2)] / P(xq^4),
    // with P(y) = prod_m (y/zeta_m - 1).
    std::function<CMatrix(int, cplx)> build = [&](int k, cplx x) -> CMatrix {
        if (k == 1) return CMatrix::identity(dim) * prod_zeta(p, x * q2);
        if (k == 2) return t2(x);
        const CMatrix tk = build(k - 1, x * q2);
        const CMatrix t2x = t2(x);
        const CMatrix tkm = build(k - 2, x * q2 * q2);
        const cplx pa = prod_zeta(p, x * q2);
        const cplx pb = prod_zeta(p, x * q2 * q2);
        return (tk * t2x - tkm * pa) * (1.0 / pb);
    };
    op.mat = build(n, z);
    return op;
}

std::vector<int> sector_basis(int M, double Sz) {
    const double ndown_f = M / 2.0 - Sz;
    const int ndown = static_cast<int>(std::lround(ndown_f));
    if (std::abs(ndown_f - ndown) > 1e-9 || ndown < 0 || ndown > M)
        throw ConfigError("sector_basis: empty sector, 2*Sz must match M mod 2");
    std::vector<int> idx;
    for (int b = 0; b < (1 << M); ++b)
        if (__builtin_popcount(static_cast<unsigned>(b)) == ndown) idx.push_back(b);
    return idx;
}

CMatrix spin_sector_project(const CMatrix& op, double Sz, int M) {
    const std::vector<int> idx = sector_basis(M, Sz);
    CMatrix out(static_cast<int>(idx.size()), static_cast<int>(idx.size()));
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = 0; j < idx.size(); ++j) out(i, j) = op(idx[i], idx[j]);
    return out;
}

double sz_conservation_residual(const CMatrix& op, int M) {
    return commutator_residual(op, total_sz(M));
}

cplx prod_zeta(const ModelParams& p, cplx z) {
    cplx acc(1.0, 0.0);
    for (const auto& zeta : p.zeta) acc *= (z / zeta - 1.0);
    return acc;
}

cplx ratio_phi(const ModelParams& p, cplx z) {
    cplx acc(1.0, 0.0);
    for (const auto& zeta : p.zeta) acc *= (z - zeta) / (z * p.q * p.q - zeta);
    return acc;
}

} // namespace sixv
