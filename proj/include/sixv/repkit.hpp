#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sixv/cmatrix.hpp"
#include "sixv/params.hpp"

namespace sixv {

cplx ipow(cplx base, long long e); // integer power by repeated squaring
cplx q_int(cplx q, long long m);   // [m]_q = (q^m - q^-m)/(q - q^-1)
cplx q_factorial(cplx q, int m);   // [m]_q!

/// Boltzmann weights of the six-vertex R-matrix:
/// a = 1, b = (1-z)q/(1-zq^2), c = (1-q^2)/(1-zq^2), c' = c z.
struct BoltzmannWeights {
    cplx a, b, c, c_prime;
    cplx z;
};

BoltzmannWeights weights_sixvertex(cplx z, cplx q);

/// 4x4 six-vertex R-matrix on aux (x) site, aux index most significant:
/// (a+b)/2 I + (a-b)/2 sz(x)sz + c s+(x)s- + c' s-(x)s+.
CMatrix rmatrix(cplx z, cplx q);

enum class AuxKind { RootOfUnityMu, FourParamBorel, QOscPlus, QOscMinus, SpinN };

struct AuxRepSpec {
    AuxKind kind = AuxKind::RootOfUnityMu;
    cplx w;              // spectral point
    cplx mu;             // root-of-unity family
    cplx r0{1.0, 0.0}, r1{1.0, 0.0}, r2{1.0, 0.0}; // Borel family (rescaled)
    int n = 1;           // spin label
    int window_K = 40;   // Borel window size
    int m_o = 0;         // Borel window offset (indices m_o-K+1 .. m_o)
    bool h_prime = true; // twist convention h'|n> = -2n|n>

    static AuxRepSpec root_of_unity_mu(cplx w, cplx mu);
    static AuxRepSpec borel(cplx w, cplx r0, cplx r1, cplx r2, int K, int m_o = 0);
    static AuxRepSpec q_osc(int sign, cplx w, int K); // +: (1,1,0), -: (1,0,1)
    static AuxRepSpec spin_n(cplx w, int n);
};

/// Generator images on a concrete auxiliary space.  Borel representations
/// carry no f's (has_f = false, matrices empty).
struct RepOps {
    int dim = 0;
    int lo = 0; // representation index of basis vector 0 (Borel windows)
    CMatrix e0, e1, f0, f1, qh1, qh1_inv, qh0, qh0_inv;
    std::vector<double> h_prime_diag;
    bool has_f = true;
};

RepOps fundamental_rep(cplx z, cplx q);
RepOps rootofunity_rep(const AuxRepSpec& spec, const ModelParams& p);
RepOps borel_rep(const AuxRepSpec& spec, const ModelParams& p);
RepOps spin_n_rep(cplx z, int n, cplx q);

struct RelationResidual {
    std::string name;
    double residual;
};

struct AlgebraReport {
    std::vector<RelationResidual> relations;
    double max_residual = 0.0;
    std::string worst;
};

/// Residuals of the quantum-algebra relations (Cartan conjugations,
/// Cartan commutativity, and the cubic Serre relations when both e0, e1
/// are present).  Truncated windows are checked on interior indices only.
AlgebraReport verify_algebra_relations(const RepOps& r, cplx q, int interior_margin = 0);

enum class LFamily { G1, G2, Fusion };

/// Matrix elements of the L-operator at a fixed argument x = w/z:
/// alpha_n, delta_n on the diagonal, beta_n = <n|beta|n-1>,
/// gamma_n = <n|gamma|n+1>.  Structural zeros at the index-range ends are
/// stored as exact zeros.
struct LWeights {
    LFamily family = LFamily::G1;
    int lo = 0, hi = 0; // inclusive index range
    cplx x;             // argument w/z
    std::vector<cplx> alpha, beta, gamma, delta;

    int dim() const { return hi - lo + 1; }
    cplx al(int n) const { return alpha[n - lo]; }
    cplx de(int n) const { return delta[n - lo]; }
    cplx be(int n) const { return (n <= lo || n > hi) ? cplx(0.0, 0.0) : beta[n - lo]; }
    cplx ga(int n) const { return (n < lo || n >= hi) ? cplx(0.0, 0.0) : gamma[n - lo]; }
};

/// Root-of-unity intertwiner elements, indices 0..N'-1.
LWeights l_rootofunity(cplx x, cplx mu, const ModelParams& p);

/// Four-parameter Borel intertwiner elements on the window
/// {m_o-K+1, ..., m_o}.
LWeights l_generic(cplx x, cplx r0, cplx r1, cplx r2, int K, cplx q, int m_o = 0);

/// Fusion L-operator, site-index blocks over the spin-n/2 auxiliary space,
/// with rho+ = wq, rho- = 1.
struct FusionL {
    int n;   // spin label, aux dim n+1
    cplx w, q;
    CMatrix b00, b01, b10, b11; // <site i| L |site j>, each (n+1)x(n+1)
};

FusionL l_fusion_blocks(cplx w, int n, cplx q);

/// Same operator flattened as a 2(n+1) x 2(n+1) matrix; site index is the
/// outer (block) index.
CMatrix l_fusion(cplx w, int n, cplx q);

} // namespace sixv
