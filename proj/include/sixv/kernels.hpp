#pragma once

#include "sixv/cmatrix.hpp"

namespace sixv::kern {

// OpenMP kernels.  dst must be preallocated with the right shape.
void matmul(CMatrix& dst, const CMatrix& a, const CMatrix& b);
void kron(CMatrix& dst, const CMatrix& a, const CMatrix& b);
void add_scaled(CMatrix& dst, cplx s, const CMatrix& x); // dst += s*x
double frobenius(const CMatrix& a);

// Serial reference implementations, kept for testing and benchmarking
// against the parallel kernels above.
namespace serial {
void matmul(CMatrix& dst, const CMatrix& a, const CMatrix& b);
void kron(CMatrix& dst, const CMatrix& a, const CMatrix& b);
void add_scaled(CMatrix& dst, cplx s, const CMatrix& x);
double frobenius(const CMatrix& a);
} // namespace serial

} // namespace sixv::kern
