#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sixv/cmatrix.hpp"

namespace sixv {

/// Deformation-parameter input.  The exact root-of-unity form fixes the
/// order N without floating drift; the other two are parsed as given.
struct QInput {
    enum class Kind { RootOfUnity, PhaseOverPi, Cartesian };
    Kind kind = Kind::Cartesian;
    int N = 0, k = 1;      // q = exp(2 pi i k / N)
    double phase_over_pi = 0.0;
    cplx value;

    static QInput root_of_unity(int N, int k = 1);
    static QInput phase(double phase_over_pi);
    static QInput cartesian(cplx v);

    cplx eval() const;
};

struct ModelParams {
    int M = 1;                    // chain length
    cplx q;                       // deformation parameter
    cplx lambda{1.0, 0.0};        // boundary twist
    std::vector<cplx> zeta;       // inhomogeneities, size M
    std::optional<int> N;         // root-of-unity order, empty = generic q

    int Nprime() const;           // N if N odd, N/2 if N even
    bool at_root_of_unity() const { return N.has_value(); }

    /// Throws ConfigError when the invariants fail: M >= 1, zeta nonzero,
    /// q^N = 1 and q^N' = +-1 when N is set, and the generic-q guard
    /// (|q^k - 1| > 1e-6 for k = 1..24) otherwise.
    void validate() const;

    static ModelParams make(int M, const QInput& q, cplx lambda = cplx(1.0, 0.0),
                            std::vector<cplx> zeta = {});
    static ModelParams make_root_of_unity(int M, int N, int k = 1, cplx lambda = cplx(1.0, 0.0),
                                          std::vector<cplx> zeta = {});
    static ModelParams make_generic(int M, cplx q, cplx lambda = cplx(1.0, 0.0),
                                    std::vector<cplx> zeta = {});
};

} // namespace sixv
