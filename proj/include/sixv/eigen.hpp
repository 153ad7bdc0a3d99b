#pragma once

#include <vector>

#include "sixv/cmatrix.hpp"

namespace sixv {

struct EigenPair {
    cplx value;
    std::vector<cplx> vector; // unit 2-norm
    double residual;          // ||A v - value v||_2
};

/// Complete eigendecomposition of a square dense matrix (LAPACK zgeev
/// behind the scenes).  Pairs are sorted by (Re, Im) of the value.  The
/// contract is residual-based: every returned pair satisfies
/// residual <= tol, otherwise a ConvergenceError carrying the worst
/// residual is thrown.
std::vector<EigenPair> eigenpairs(const CMatrix& a, double tol);

/// Eigenvalues only, sorted by (Re, Im).
std::vector<cplx> eigenvalues(const CMatrix& a);

/// Solve A x = b for a single right-hand side (zgesv).
std::vector<cplx> solve_linear(CMatrix a, std::vector<cplx> b);

/// Least-squares solution of an overdetermined system (zgels).
std::vector<cplx> lstsq(CMatrix a, std::vector<cplx> b);

} // namespace sixv
