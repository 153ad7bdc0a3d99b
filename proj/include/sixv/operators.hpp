#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "sixv/cmatrix.hpp"
#include "sixv/params.hpp"
#include "sixv/repkit.hpp"

namespace sixv {

struct OperatorMeta {
    std::string family;
    cplx spectral;
    std::string note;
    double tail_estimate = 0.0;
};

struct QuantumOperator {
    CMatrix mat;
    OperatorMeta meta;
};

/// Grid of quantum-space operators indexed by auxiliary in/out states.
struct BlockMonodromy {
    int aux_dim = 0;
    int band = 1;
    std::vector<CMatrix> blocks; // row-major aux_dim x aux_dim

    CMatrix& block(int i, int j) { return blocks[static_cast<std::size_t>(i) * aux_dim + j]; }
    const CMatrix& block(int i, int j) const {
        return blocks[static_cast<std::size_t>(i) * aux_dim + j];
    }
};

/// Weighted partial trace over the auxiliary grid: sum_n w_n blocks[n][n].
CMatrix aux_trace(const BlockMonodromy& q, const std::vector<cplx>& weights);

/// Per-site auxiliary matrix element: 2x2 site operator {m00,m01,m10,m11}
/// for auxiliary pair (a,b) at site m (1-based).
using SiteBlockFn = std::function<std::array<cplx, 4>(int m, int a, int b)>;

/// Ordered product L_{0M} ... L_{01}, evaluated MPO-style: per auxiliary
/// column a banded vector of quantum-space operators is propagated site by
/// site; the full tensor product over aux (x) quantum space is never
/// materialized.  aux_twist (optional) multiplies row a by its entry.
BlockMonodromy build_monodromy(int M, int aux_dim, int band, const SiteBlockFn& site,
                               const std::vector<cplx>& aux_twist);

/// Same propagation but only the weighted diagonal sum_n w_n <n|..|n> is
/// accumulated; per-column intermediates are discarded.  Columns run in
/// parallel; accumulation order is fixed, so results do not depend on the
/// thread count.
CMatrix build_traced(int M, int aux_dim, int band, const SiteBlockFn& site,
                     const std::vector<cplx>& trace_weights);

QuantumOperator transfer_t(const ModelParams& p, cplx z);

struct YangBaxterOps {
    CMatrix A, B, C, D;
};

/// Monodromy elements over the two-dimensional auxiliary space.
YangBaxterOps abcd(const ModelParams& p, cplx z);

/// Full (G1) monodromy grid at a root of unity; with_twist applies
/// lambda^{-2n} on auxiliary rows.
BlockMonodromy monodromy_q_mu(const ModelParams& p, cplx mu, cplx w, bool with_twist = true);

/// (G2) monodromy grid on the Borel window (generic q).
BlockMonodromy monodromy_q_generic(const ModelParams& p, cplx r0, cplx r1, cplx r2, cplx w,
                                   int K, int m_o = 0, bool with_twist = true);

/// Root-of-unity auxiliary matrix Q_mu(w) = sum_n lambda^{-2n} Q_nn.
QuantumOperator q_mu(const ModelParams& p, cplx mu, cplx w);

/// Truncated generic-q auxiliary matrix Q_<=(w; r0, r1) on the window
/// n in {-K+1..0} (r2 = 1).  Checks the convergence bound (10% margin)
/// and attaches a measured geometric tail estimate; tail > 1e-12 * norm
/// raises WindowError.
QuantumOperator q_trunc(const ModelParams& p, cplx r0, cplx r1, cplx w, int K);

/// q-oscillator auxiliary matrices Q^+/Q^- (window-truncated modules).
QuantumOperator q_osc(const ModelParams& p, int sign, cplx w, int K);

/// General truncated trace with explicit deformation and (r0,r1,r2);
/// used by the spin-reversal identity where q -> 1/q and the roles of
/// r1, r2 swap.
QuantumOperator q_generic_traced(const ModelParams& p, cplx q_def, cplx r0, cplx r1, cplx r2,
                                 cplx w, int K, int m_o = 0);

/// Fusion matrix T^(n)(z), trace over the spin-(n-1)/2 auxiliary space,
/// twist lambda^{h}.  Direct construction; fails with a q-integer
/// obstruction at roots of unity when n-1 >= N'.
QuantumOperator fusion_t(const ModelParams& p, int n, cplx z);

/// T^(n) through the fusion recursion from T^(1), T^(2); available at
/// roots of unity past the obstruction.
QuantumOperator fusion_t_recursive(const ModelParams& p, int n, cplx z);

/// Basis indices (bitstrings, lexicographic) of the S^z sector; site 1 is
/// the most significant bit, set bit = down spin.
std::vector<int> sector_basis(int M, double Sz);

/// Restriction of op to the S^z eigenspace.
CMatrix spin_sector_project(const CMatrix& op, double Sz, int M);

/// Commutator residual of op against total S^z (spin conservation).
double sz_conservation_residual(const CMatrix& op, int M);

/// prod_m (z q^2 / zeta_m - 1) and friends.
cplx prod_zeta(const ModelParams& p, cplx z);            // prod (z/zeta_m - 1)
cplx ratio_phi(const ModelParams& p, cplx z);            // prod (z-zeta_m)/(zq^2-zeta_m)

/// Convergence bound |lambda| < |q|^{-+M/2} (10% safety margin); throws
/// BoundError when violated.
void check_qconv_bound(const ModelParams& p, cplx q_def);

} // namespace sixv
