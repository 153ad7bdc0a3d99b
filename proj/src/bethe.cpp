#include "sixv/bethe.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <numbers>
#include <string>

#include "sixv/eigen.hpp"

namespace sixv {

namespace {

bool roots_sorted_less(const cplx& a, const cplx& b) {
    const double ra = std::abs(a), rb = std::abs(b);
    if (std::abs(ra - rb) > 1e-12 * (ra + rb + 1.0)) return ra < rb;
    return std::arg(a) < std::arg(b);
}

// Denominator-cleared Bethe system:
// G_i = lambda q^{n_B} prod_j (z_j - z_i q^-2) prod_m (z_i q^2 - zeta_m)
//     + lambda^-1 q^{M-n_B} prod_m (z_i - zeta_m) prod_j (z_j - z_i q^2).
std::vector<cplx> cleared_bae(const std::vector<cplx>& z, const ModelParams& p) {
    const int n = static_cast<int>(z.size());
    const cplx q2 = p.q * p.q;
    const cplx c1 = p.lambda * ipow(p.q, n);
    const cplx c2 = ipow(p.q, p.M - n) / p.lambda;
    std::vector<cplx> g(n);
    for (int i = 0; i < n; ++i) {
        cplx u(1.0, 0.0), v(1.0, 0.0), x(1.0, 0.0), y(1.0, 0.0);
        for (int j = 0; j < n; ++j) {
            u *= z[j] - z[i] / q2;
            y *= z[j] - z[i] * q2;
        }
        for (int m = 0; m < p.M; ++m) {
            v *= z[i] * q2 - p.zeta[m];
            x *= z[i] - p.zeta[m];
        }
        g[i] = c1 * u * v + c2 * x * y;
    }
    return g;
}

double g_norm(const std::vector<cplx>& g) {
    double acc = 0.0;
    for (const auto& x : g) acc += std::norm(x);
    return std::sqrt(acc);
}

double max_abs_vec(const std::vector<cplx>& v) {
    double m = 0.0;
    for (const auto& x : v) m = std::max(m, std::abs(x));
    return m;
}

double normalized_residual(const std::vector<cplx>& z, const ModelParams& p) {
    const int n = static_cast<int>(z.size());
    if (n == 0) return 0.0;
    std::vector<cplx> coeffs = poly_from_roots_pb(z);
    const cplx q2 = p.q * p.q;
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        const cplx t1 = p.lambda * ipow(p.q, n) * poly_eval(coeffs, z[i] / q2);
        cplx phi(1.0, 0.0);
        for (int m = 0; m < p.M; ++m) phi *= (z[i] - p.zeta[m]) / (z[i] * q2 - p.zeta[m]);
        const cplx t2 = ipow(p.q, p.M - n) / p.lambda * phi * poly_eval(coeffs, z[i] * q2);
        const double scale = std::max(std::abs(t1), std::abs(t2));
        worst = std::max(worst, std::abs(t1 + t2) / std::max(scale, 1e-300));
    }
    return worst;
}

// Damped Newton with central-difference Jacobian on the cleared system.
std::optional<std::vector<cplx>> newton_solve(std::vector<cplx> z, const ModelParams& p,
                                              int max_iter, double accept_tol) {
    const int n = static_cast<int>(z.size());
    for (int it = 0; it < max_iter; ++it) {
        std::vector<cplx> g = cleared_bae(z, p);
        const double gn = g_norm(g);
        if (normalized_residual(z, p) < accept_tol) return z;
        CMatrix jac(n, n);
        for (int k = 0; k < n; ++k) {
            const double h = 1e-7 * std::max(1.0, std::abs(z[k]));
            std::vector<cplx> zp(z), zm(z);
            zp[k] += h;
            zm[k] -= h;
            const std::vector<cplx> gp = cleared_bae(zp, p), gm = cleared_bae(zm, p);
            for (int i = 0; i < n; ++i) jac(i, k) = (gp[i] - gm[i]) / (2.0 * h);
        }
        std::vector<cplx> rhs(n);
        for (int i = 0; i < n; ++i) rhs[i] = -g[i];
        std::vector<cplx> step;
        try {
            step = solve_linear(jac, rhs);
        } catch (const Error&) {
            return std::nullopt;
        }
        double damp = 1.0;
        bool moved = false;
        for (int half = 0; half < 40; ++half) {
            std::vector<cplx> trial(z);
            for (int i = 0; i < n; ++i) trial[i] += damp * step[i];
            bool bad = false;
            for (const auto& zt : trial)
                if (!std::isfinite(zt.real()) || !std::isfinite(zt.imag()) || std::abs(zt) < 1e-14)
                    bad = true;
            if (!bad && g_norm(cleared_bae(trial, p)) < gn) {
                z = std::move(trial);
                moved = true;
                break;
            }
            damp *= 0.5;
        }
        if (!moved) return std::nullopt;
    }
    if (normalized_residual(z, p) < accept_tol) return z;
    return std::nullopt;
}

bool valid_root_set(const std::vector<cplx>& z, const ModelParams& p) {
    const int n = static_cast<int>(z.size());
    for (const auto& zi : z) {
        const double a = std::abs(zi);
        if (!(a > 1e-7 && a < 1e7)) return false;
        for (int m = 0; m < p.M; ++m)
            if (std::abs(zi * p.q * p.q - p.zeta[m]) < 1e-8) return false;
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double sep = std::abs(z[i] - z[j]) / std::max(std::abs(z[i]), std::abs(z[j]));
            if (sep < 1e-8) return false;
        }
    if (p.at_root_of_unity()) {
        // Reject q^2-spaced pairs: members of (partial) complete strings
        // satisfy the cleared system for a continuum of anchors.
        const cplx q2 = p.q * p.q;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (i == j) continue;
                if (std::abs(z[i] * q2 - z[j]) < 1e-6 * std::abs(z[j])) return false;
            }
    }
    return true;
}

} // namespace

BetheRootSet make_root_set(std::vector<cplx> roots, const ModelParams& p,
                           BetheRootSet::Provenance prov) {
    std::sort(roots.begin(), roots.end(), roots_sorted_less);
    BetheRootSet rs;
    rs.roots = std::move(roots);
    rs.n_B = static_cast<int>(rs.roots.size());
    rs.Sz = 0.5 * (p.M - 2 * rs.n_B);
    rs.pb_coeffs = poly_from_roots_pb(rs.roots);
    rs.provenance = prov;
    rs.residual = max_abs_vec(bae_residual(rs, p));
    return rs;
}

std::vector<cplx> bae_residual(const BetheRootSet& rs, const ModelParams& p) {
    std::vector<cplx> out(rs.n_B);
    const cplx q2 = p.q * p.q;
    for (int i = 0; i < rs.n_B; ++i) {
        const cplx zi = rs.roots[i];
        for (int m = 0; m < p.M; ++m)
            if (std::abs(zi * q2 - p.zeta[m]) < 1e-12)
                throw SingularArgumentError("bae_residual: z_i q^2 hits an inhomogeneity pole");
        const cplx t1 = p.lambda * ipow(p.q, rs.n_B) * rs.pb(zi / q2);
        const cplx t2 = ipow(p.q, p.M - rs.n_B) / p.lambda * ratio_phi(p, zi) * rs.pb(zi * q2);
        const double scale = std::max(std::abs(t1), std::abs(t2));
        out[i] = (t1 + t2) / std::max(scale, 1e-300);
    }
    return out;
}

std::vector<BetheRootSet> solve_bae(const ModelParams& p, int n_B, const SolveOptions& opt) {
    std::vector<BetheRootSet> found;
    if (n_B == 0) {
        found.push_back(make_root_set({}, p, BetheRootSet::Provenance::Solved));
        return found;
    }
    std::mt19937_64 rng(opt.rng_seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    auto already_have = [&](const std::vector<cplx>& z) {
        for (const auto& rs : found) {
            double worst = 0.0;
            for (int i = 0; i < n_B; ++i)
                worst = std::max(worst, std::abs(rs.roots[i] - z[i]) /
                                            std::max(1.0, std::abs(rs.roots[i])));
            if (worst < 1e-8) return true;
        }
        return false;
    };

    for (int s = 0; s < opt.seeds; ++s) {
        std::vector<cplx> seed(n_B);
        for (int i = 0; i < n_B; ++i) {
            // Log-uniform annulus 0.1 <= |z| <= 10, with every third seed
            // pinned near the unit circle where physical roots cluster.
            const double r = (s % 3 == 0) ? std::exp(0.4 * (unif(rng) - 0.5))
                                          : std::pow(10.0, 2.0 * unif(rng) - 1.0);
            seed[i] = std::polar(r, 2.0 * std::numbers::pi * unif(rng));
        }
        auto sol = newton_solve(seed, p, opt.max_iter, opt.accept_tol);
        if (!sol) continue;
        if (!valid_root_set(*sol, p)) continue;
        std::sort(sol->begin(), sol->end(), roots_sorted_less);
        if (already_have(*sol)) continue;
        BetheRootSet rs = make_root_set(*sol, p, BetheRootSet::Provenance::Solved);
        if (rs.residual >= opt.accept_tol) continue;
        found.push_back(std::move(rs));
        if (static_cast<int>(found.size()) >= opt.max_solutions) break;
    }
    std::sort(found.begin(), found.end(), [](const BetheRootSet& a, const BetheRootSet& b) {
        return roots_sorted_less(a.roots[0], b.roots[0]);
    });
    return found;
}

std::optional<BetheRootSet> refine_roots(const ModelParams& p, const std::vector<cplx>& seed,
                                         int max_iter, double accept_tol) {
    auto sol = newton_solve(seed, p, max_iter, accept_tol);
    if (!sol) return std::nullopt;
    if (!valid_root_set(*sol, p)) return std::nullopt;
    return make_root_set(*sol, p, BetheRootSet::Provenance::Solved);
}

BetheState bethe_state(const BetheRootSet& rs, const ModelParams& p) {
    const int dim = 1 << p.M;
    BetheState st;
    st.vec.assign(dim, cplx(0.0, 0.0));
    st.vec[0] = 1.0;
    double opscale = 1.0;
    for (const auto& zj : rs.roots) {
        const CMatrix b = abcd(p, zj).B;
        st.vec = b.apply(st.vec);
        opscale *= b.frobenius() / std::sqrt(static_cast<double>(dim));
    }
    st.prenorm = vec_norm(st.vec);
    st.collapsed = st.prenorm < 1e-10 * std::max(opscale, 1e-300);
    if (!st.collapsed && st.prenorm > 0.0)
        for (auto& x : st.vec) x /= st.prenorm;
    return st;
}

namespace {

// Two-sided offset evaluation for removable on-shell singularities.
cplx guarded_eval(const std::function<cplx(cplx)>& f, cplx z, bool near_pole) {
    if (!near_pole) return f(z);
    const double h = 1e-6;
    return 0.5 * (f(z * (1.0 + h)) + f(z * (1.0 - h)));
}

bool near_any_root(const std::vector<cplx>& args, const std::vector<cplx>& roots) {
    for (const auto& a : args)
        for (const auto& r : roots)
            if (std::abs(a - r) < 1e-8 * std::max(1.0, std::abs(r))) return true;
    return false;
}

} // namespace

cplx eig_t(const BetheRootSet& rs, const ModelParams& p, cplx z) {
    auto f = [&](cplx x) -> cplx {
        const cplx q2 = p.q * p.q;
        const cplx t1 = p.lambda * ipow(p.q, rs.n_B) * rs.pb(x / q2) / rs.pb(x);
        const cplx t2 =
            ipow(p.q, p.M - rs.n_B) / p.lambda * ratio_phi(p, x) * rs.pb(x * q2) / rs.pb(x);
        return t1 + t2;
    };
    return guarded_eval(f, z, near_any_root({z}, rs.roots));
}

LFamilySpec LFamilySpec::g1(cplx mu) {
    LFamilySpec s;
    s.family = LFamily::G1;
    s.mu = mu;
    return s;
}

LFamilySpec LFamilySpec::g2(cplx r0, cplx r1, cplx r2, int K, int m_o) {
    LFamilySpec s;
    s.family = LFamily::G2;
    s.r0 = r0;
    s.r1 = r1;
    s.r2 = r2;
    s.K = K;
    s.m_o = m_o;
    return s;
}

LWeights family_weights(const LFamilySpec& fam, cplx x, const ModelParams& p) {
    if (fam.family == LFamily::G1) return l_rootofunity(x, fam.mu, p);
    if (fam.family == LFamily::G2) return l_generic(x, fam.r0, fam.r1, fam.r2, fam.K, p.q, fam.m_o);
    throw ConfigError("family_weights: fusion family has no scalar weight table");
}

std::vector<cplx> vacuum_q_diag(const LFamilySpec& fam, const ModelParams& p, cplx w) {
    std::vector<LWeights> per_site;
    per_site.reserve(p.M);
    for (int m = 0; m < p.M; ++m) per_site.push_back(family_weights(fam, w / p.zeta[m], p));
    const int lo = per_site[0].lo, hi = per_site[0].hi;
    std::vector<cplx> out(hi - lo + 1);
    for (int k = lo; k <= hi; ++k) {
        cplx acc = ipow(p.lambda, -2 * k);
        for (int m = 0; m < p.M; ++m) acc *= per_site[m].al(k);
        out[k - lo] = acc;
    }
    return out;
}

cplx EigenWeights::Lambda(int i, int k, int l) const {
    const LWeights& w = lw[i];
    cplx val = w.de(l) / w.al(k);
    const cplx bet = w.be(l + 1), gam = w.ga(l);
    if (bet != cplx(0.0, 0.0) && gam != cplx(0.0, 0.0))
        val -= bet * gam / (w.al(l + 1) * w.al(k));
    return val;
}

cplx EigenWeights::r(int i, int k) const {
    const LWeights& w = lw[i];
    return w.be(k) / w.al(k);
}

EigenWeights eigen_weights(const BetheRootSet& rs, const LFamilySpec& fam, const ModelParams& p,
                           cplx w) {
    EigenWeights ew;
    ew.n_B = rs.n_B;
    for (int i = 0; i < rs.n_B; ++i) {
        LWeights lwi = family_weights(fam, w / rs.roots[i], p);
        for (int k = lwi.lo; k <= lwi.hi; ++k)
            if (std::abs(lwi.al(k)) < 1e-12)
                throw SingularArgumentError(
                    "eigen_weights: alpha_k vanishes at k = " + std::to_string(k) +
                    "; perturb the spectral point w");
        ew.lw.push_back(std::move(lwi));
    }
    if (rs.n_B > 0) {
        ew.lo = ew.lw[0].lo;
        ew.hi = ew.lw[0].hi;
        ew.bij = CMatrix(rs.n_B, rs.n_B);
        ew.cij = CMatrix(rs.n_B, rs.n_B);
        ew.cij_prime = CMatrix(rs.n_B, rs.n_B);
        for (int i = 0; i < rs.n_B; ++i)
            for (int j = 0; j < rs.n_B; ++j) {
                if (i == j) continue;
                const BoltzmannWeights bw = weights_sixvertex(rs.roots[i] / rs.roots[j], p.q);
                ew.bij(i, j) = bw.b;
                ew.cij(i, j) = bw.c;
                ew.cij_prime(i, j) = bw.c_prime;
            }
    } else {
        const LWeights lw0 = family_weights(fam, w, p);
        ew.lo = lw0.lo;
        ew.hi = lw0.hi;
    }
    return ew;
}

cplx eig_conjecture_general(const std::vector<cplx>& vacuum_q, const EigenWeights& ew) {
    if (static_cast<int>(vacuum_q.size()) != ew.hi - ew.lo + 1)
        throw SizeError("eig_conjecture_general: index ranges differ");
    cplx acc(0.0, 0.0);
    for (int k = ew.lo; k <= ew.hi; ++k) {
        cplx term = vacuum_q[k - ew.lo];
        for (int i = 0; i < ew.n_B; ++i) term *= ew.Lam(i, k);
        acc += term;
    }
    return acc;
}

cplx eig_q_mu(const BetheRootSet& rs, const ModelParams& p, cplx mu, cplx w) {
    const int d = p.Nprime();
    const int s2 = p.M - 2 * rs.n_B; // 2 S^z
    const cplx sq = std::sqrt(p.q), smu = std::sqrt(mu);
    auto f = [&](cplx ww) -> cplx {
        cplx pref = ipow(sq, s2) * ipow(smu, s2) * rs.pb(ww * mu) * rs.pb(ww / mu);
        cplx sum(0.0, 0.0);
        for (int k = 0; k < d; ++k) {
            cplx num = ipow(p.lambda, -2 * k) * ipow(p.q, static_cast<long long>(k) * s2);
            for (int m = 0; m < p.M; ++m) num *= (ww / mu * ipow(p.q, -2 * k) / p.zeta[m] - 1.0);
            const cplx den =
                rs.pb(ww / mu * ipow(p.q, -2 * k)) * rs.pb(ww / mu * ipow(p.q, -2 * k - 2));
            sum += num / den;
        }
        return pref * sum;
    };
    std::vector<cplx> args;
    for (int k = 0; k <= d; ++k) args.push_back(w / mu * ipow(p.q, -2 * k));
    return guarded_eval(f, w, near_any_root(args, rs.roots));
}

cplx eig_q_trunc(const BetheRootSet& rs, const ModelParams& p, cplx r0, cplx r1, cplx z,
                 int terms) {
    check_qconv_bound(p, p.q);
    const int s2 = p.M - 2 * rs.n_B;
    const cplx sq = std::sqrt(p.q), sr0 = std::sqrt(r0);
    auto f = [&](cplx x) -> cplx {
        const cplx pref =
            ipow(p.lambda, -2) * ipow(p.q, s2) * ipow(sr0, -s2) * rs.pb(x * r1) * rs.pb(x);
        cplx sum(0.0, 0.0);
        for (int l = 1; l <= terms; ++l) {
            cplx num = ipow(p.lambda, 2 * l) * ipow(p.q, -static_cast<long long>(l) * s2);
            for (int m = 0; m < p.M; ++m) num *= (x * ipow(p.q, 2 * l) / p.zeta[m] - 1.0);
            sum += num / (rs.pb(x * ipow(p.q, 2 * l)) * rs.pb(x * ipow(p.q, 2 * l - 2)));
        }
        return pref * sum;
    };
    std::vector<cplx> args;
    for (int l = 0; l <= terms; ++l) args.push_back(z * ipow(p.q, 2 * l));
    return guarded_eval(f, z, near_any_root(args, rs.roots));
}

cplx eig_q_osc(const BetheRootSet& rs, const ModelParams& p, int sign, cplx z, int terms) {
    const int s2 = p.M - 2 * rs.n_B;
    const double msign = (p.M % 2 == 0) ? 1.0 : -1.0;
    const cplx geom = 1.0 - p.lambda * p.lambda * ipow(p.q, -s2);
    if (std::abs(geom) < 1e-10)
        throw BoundError("eig_q_osc: lambda^2 q^{-2Sz} = 1, geometric series diverges");
    if (sign >= 0) return msign * rs.pb(z) / geom;
    check_qconv_bound(p, p.q);
    auto f = [&](cplx x) -> cplx {
        cplx sum(0.0, 0.0);
        for (int l = 0; l <= terms; ++l) {
            cplx num = ipow(p.lambda, 2 * l) * ipow(p.q, -static_cast<long long>(l) * s2);
            for (int m = 0; m < p.M; ++m) num *= (x * ipow(p.q, 2 * l + 2) / p.zeta[m] - 1.0);
            sum += num / (rs.pb(x * ipow(p.q, 2 * l + 2)) * rs.pb(x * ipow(p.q, 2 * l)));
        }
        return rs.pb(x) * sum;
    };
    std::vector<cplx> args;
    for (int l = 0; l <= terms + 1; ++l) args.push_back(z * ipow(p.q, 2 * l));
    return guarded_eval(f, z, near_any_root(args, rs.roots));
}

cplx eig_fusion(const BetheRootSet& rs, const ModelParams& p, int n, cplx z, bool at_root,
                double s) {
    const int s2 = at_root ? static_cast<int>(std::lround(2.0 * s)) : p.M - 2 * rs.n_B;
    if (at_root && std::abs(2.0 * s - std::lround(2.0 * s)) > 1e-9)
        throw ConfigError("eig_fusion: 2s must be integral");
    const cplx sq = std::sqrt(p.q);
    auto f = [&](cplx x) -> cplx {
        const cplx pref = ipow(p.lambda, -n - 1) * ipow(sq, static_cast<long long>(n + 1) * s2) *
                          rs.pb(x) * rs.pb(x * ipow(p.q, 2 * n));
        cplx sum(0.0, 0.0);
        for (int l = 1; l <= n; ++l) {
            cplx num = ipow(p.lambda, 2 * l) * ipow(p.q, -static_cast<long long>(l) * s2);
            for (int m = 0; m < p.M; ++m) num *= (x * ipow(p.q, 2 * l) / p.zeta[m] - 1.0);
            sum += num / (rs.pb(x * ipow(p.q, 2 * l)) * rs.pb(x * ipow(p.q, 2 * l - 2)));
        }
        return pref * sum;
    };
    std::vector<cplx> args;
    for (int l = 0; l <= n; ++l) args.push_back(z * ipow(p.q, 2 * l));
    return guarded_eval(f, z, near_any_root(args, rs.roots));
}

namespace {

// Q eigenvalue of a given operator family on an eigenvector, sampled over
// spectral points and interpolated as a polynomial.
std::vector<cplx> q_eigenvalue_poly(const ModelParams& p, const std::vector<cplx>& v,
                                    const std::function<CMatrix(cplx)>& build, int degree,
                                    const std::vector<cplx>& points) {
    PolySamples s;
    s.degree_bound = degree;
    for (const auto& w : points) {
        const CMatrix qop = build(w);
        const std::vector<cplx> qv = qop.apply(v);
        const cplx val = vec_dot(v, qv);
        double res = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) res += std::norm(qv[i] - val * v[i]);
        const double scale = std::max(1.0, vec_norm(qv));
        if (std::sqrt(res) > 1e-8 * scale)
            throw Error("roots_from_q_spectrum: vector is not a Q eigenvector (residual " +
                        std::to_string(std::sqrt(res) / scale) + ")");
        s.points.push_back(w);
        s.values.push_back(val);
    }
    return poly_from_samples(s, 1e-6);
}

} // namespace

BetheRootSet roots_from_q_spectrum(const ModelParams& p, const std::vector<cplx>& eigvec,
                                   QFamilyTag tag) {
    // Sector from <v|Sz|v>; the vector must be spin-homogeneous.
    double sz = 0.0;
    for (std::size_t b = 0; b < eigvec.size(); ++b)
        sz += std::norm(eigvec[b]) *
              (0.5 * p.M - __builtin_popcount(static_cast<unsigned>(b)));
    const int n_B = static_cast<int>(std::lround(0.5 * p.M - sz));
    if (n_B == 0) return make_root_set({}, p, BetheRootSet::Provenance::ExtractedFromQ);

    std::vector<cplx> points;
    for (int i = 0; i < p.M + 3; ++i)
        points.push_back(std::polar(0.77, 2.0 * std::numbers::pi * (i + 0.17) / (p.M + 3)));

    std::vector<cplx> roots;
    if (tag == QFamilyTag::GenericOsc) {
        // Q^+ eigenvalue is proportional to P_B.
        auto build = [&](cplx w) { return q_osc(p, +1, w, 40).mat; };
        const std::vector<cplx> coeffs = q_eigenvalue_poly(p, eigvec, build, p.M, points);
        roots = poly_roots(coeffs, 1e-9);
    } else {
        // Root of unity: compare two generic mu values; Bethe roots are the
        // mu-independent zeros, the P_S string factor moves with mu.
        const cplx mu_a(1.37, 0.21), mu_b(0.63, -0.34);
        auto build_a = [&](cplx z) { return q_mu(p, mu_a, z / mu_a).mat; };
        auto build_b = [&](cplx z) { return q_mu(p, mu_b, z / mu_b).mat; };
        const std::vector<cplx> ca = q_eigenvalue_poly(p, eigvec, build_a, p.M, points);
        const std::vector<cplx> cb = q_eigenvalue_poly(p, eigvec, build_b, p.M, points);
        const std::vector<cplx> ra = poly_roots(ca, 1e-9), rb = poly_roots(cb, 1e-9);
        for (const auto& za : ra)
            for (const auto& zb : rb)
                if (std::abs(za - zb) < 1e-6 * std::max(1.0, std::abs(za)))
                    roots.push_back(0.5 * (za + zb));
        // A q^2-ladder among candidates means P_S strings collided with the
        // Bethe roots and the deconvolution is ambiguous.
        const cplx q2 = p.q * p.q;
        for (const auto& zi : roots)
            for (const auto& zj : roots)
                if (std::abs(zi * q2 - zj) < 1e-6 * std::abs(zj))
                    throw Error("roots_from_q_spectrum: deconvolution ambiguity, candidate roots "
                                "form a q^2 string (P_S factor overlaps Bethe roots)");
    }
    std::erase_if(roots, [](const cplx& z) { return std::abs(z) < 1e-7 || std::abs(z) > 1e7; });
    return make_root_set(std::move(roots), p, BetheRootSet::Provenance::ExtractedFromQ);
}

} // namespace sixv
