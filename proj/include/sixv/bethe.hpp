#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sixv/operators.hpp"
#include "sixv/params.hpp"
#include "sixv/poly.hpp"
#include "sixv/repkit.hpp"

namespace sixv {

struct BetheRootSet {
    enum class Provenance { Solved, ExtractedFromQ, Manual };

    std::vector<cplx> roots; // sorted by (|z|, arg z)
    int n_B = 0;
    double Sz = 0.0; // (M - 2 n_B)/2
    std::vector<cplx> pb_coeffs;
    double residual = 0.0; // max normalized BAE residual
    Provenance provenance = Provenance::Manual;

    cplx pb(cplx z) const { return poly_eval(pb_coeffs, z); }
};

/// Canonicalize a root list into a BetheRootSet (sorts, builds P_B,
/// evaluates the BAE residual).
BetheRootSet make_root_set(std::vector<cplx> roots, const ModelParams& p,
                           BetheRootSet::Provenance prov = BetheRootSet::Provenance::Manual);

/// Per-root residual of the Bethe equations
///   lambda q^{n_B} P_B(z_i q^-2) + lambda^-1 q^{M-n_B} prod_m
///   (z_i - zeta_m)/(z_i q^2 - zeta_m) P_B(z_i q^2) = 0,
/// normalized by the larger term's magnitude.
std::vector<cplx> bae_residual(const BetheRootSet& rs, const ModelParams& p);

struct SolveOptions {
    int seeds = 200;
    std::uint64_t rng_seed = 0x5eed;
    int max_iter = 80;
    double accept_tol = 1e-12;
    int max_solutions = 64;
};

/// Multi-start damped Newton on the denominator-cleared polynomial form of
/// the Bethe equations; solutions deduplicated up to root permutation.
/// At a root of unity, complete-string degenerate sets (q^2-spaced pairs)
/// are rejected.
std::vector<BetheRootSet> solve_bae(const ModelParams& p, int n_B, const SolveOptions& opt = {});

/// Newton refinement of a known root set, used for continuation in q.
std::optional<BetheRootSet> refine_roots(const ModelParams& p, const std::vector<cplx>& seed,
                                         int max_iter = 60, double accept_tol = 1e-11);

struct BetheState {
    std::vector<cplx> vec; // unit norm
    double prenorm = 0.0;  // norm before normalization
    bool collapsed = false;
};

/// prod_j B(z_j) |0..0>, normalized; a near-zero pre-normalization norm
/// signals a complete-string collapse and flags the state unusable.
BetheState bethe_state(const BetheRootSet& rs, const ModelParams& p);

/// Transfer-matrix eigenvalue on the Bethe state.  Within 1e-8 of a root
/// the removable singularity is handled by two-sided offset evaluation.
cplx eig_t(const BetheRootSet& rs, const ModelParams& p, cplx z);

/// Which L-operator family the eigenvalue machinery refers to.
struct LFamilySpec {
    LFamily family = LFamily::G1;
    cplx mu;
    cplx r0{1.0, 0.0}, r1{1.0, 0.0}, r2{1.0, 0.0};
    int K = 40, m_o = 0;

    static LFamilySpec g1(cplx mu);
    static LFamilySpec g2(cplx r0, cplx r1, cplx r2, int K, int m_o = 0);
};

LWeights family_weights(const LFamilySpec& fam, cplx x, const ModelParams& p);

/// Pseudo-vacuum expectation values <0|Q_kk(w)|0> = lambda^{-2k} prod_m
/// alpha_k(w/zeta_m) over the family's index range.
std::vector<cplx> vacuum_q_diag(const LFamilySpec& fam, const ModelParams& p, cplx w);

/// Appendix tables: Lambda^i_{kl} and r^i_k at argument w/z_i, plus the
/// Boltzmann ratios b(z_i/z_j), c(z_i/z_j), c'(z_i/z_j).
struct EigenWeights {
    int lo = 0, hi = 0;
    int n_B = 0;
    std::vector<LWeights> lw; // one per Bethe root
    CMatrix bij, cij, cij_prime;

    cplx Lambda(int i, int k, int l) const;
    cplx Lam(int i, int k) const { return Lambda(i, k, k); }
    cplx r(int i, int k) const;
};

EigenWeights eigen_weights(const BetheRootSet& rs, const LFamilySpec& fam, const ModelParams& p,
                           cplx w);

/// Family-agnostic conjectured Q eigenvalue:
///   sum_k <0|Q_kk(w)|0> prod_j Lambda^j_{kk}.
cplx eig_conjecture_general(const std::vector<cplx>& vacuum_q, const EigenWeights& ew);

/// Closed-form eigenvalue of Q_mu on a Bethe state (root-of-unity family).
cplx eig_q_mu(const BetheRootSet& rs, const ModelParams& p, cplx mu, cplx w);

/// Closed-form eigenvalue of the truncated generic-q auxiliary matrix.
cplx eig_q_trunc(const BetheRootSet& rs, const ModelParams& p, cplx r0, cplx r1, cplx z,
                 int terms);

/// Closed-form eigenvalues of the q-oscillator family Q^+/Q^-.
cplx eig_q_osc(const BetheRootSet& rs, const ModelParams& p, int sign, cplx z, int terms);

/// Closed-form fusion-matrix eigenvalue T^(n)(z); at_root replaces S^z by
/// the shifted sector value s.
cplx eig_fusion(const BetheRootSet& rs, const ModelParams& p, int n, cplx z, bool at_root = false,
                double s = 0.0);

enum class QFamilyTag { RootOfUnityMu, GenericOsc };

/// Recover Bethe roots from a common eigenvector of T and the Q family by
/// interpolating the Q eigenvalue as a polynomial in the spectral variable
/// and extracting its nonzero roots.  At roots of unity the mu-dependent
/// comparison of two generic mu values separates the P_S string factor.
BetheRootSet roots_from_q_spectrum(const ModelParams& p, const std::vector<cplx>& eigvec,
                                   QFamilyTag tag);

} // namespace sixv
