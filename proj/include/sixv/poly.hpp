#pragma once

#include <vector>

#include "sixv/cmatrix.hpp"

namespace sixv {

// Polynomials are coefficient vectors in ascending order: p[k] z^k.

struct PolySamples {
    std::vector<cplx> points;
    std::vector<cplx> values;
    int degree_bound = 0;
};

/// Interpolating polynomial of degree <= degree_bound through the samples.
/// Needs degree_bound+1 distinct points; extra samples over-determine the
/// system and are checked for consistency (1e-8 relative), otherwise an
/// Error reporting the max deviation is thrown.
std::vector<cplx> poly_from_samples(const PolySamples& s, double rel_tol = 1e-8);

cplx poly_eval(const std::vector<cplx>& coeffs, cplx z);
std::vector<cplx> poly_mul(const std::vector<cplx>& a, const std::vector<cplx>& b);

/// Bethe polynomial P_B(z) = prod_j (1 - z/z_j) as a coefficient vector.
std::vector<cplx> poly_from_roots_pb(const std::vector<cplx>& roots);

/// All roots of the polynomial (companion-matrix eigenvalues); trailing
/// near-zero leading coefficients are stripped relative to max |coeff|.
std::vector<cplx> poly_roots(std::vector<cplx> coeffs, double strip_tol = 1e-12);

} // namespace sixv
