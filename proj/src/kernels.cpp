#include "sixv/kernels.hpp"

#include <cmath>

namespace sixv::kern {

namespace serial {

void matmul(CMatrix& dst, const CMatrix& a, const CMatrix& b) {
    const int m = a.rows(), k = a.cols(), n = b.cols();
    for (int i = 0; i < m; ++i) {
        cplx* drow = dst.data() + static_cast<std::size_t>(i) * n;
        for (int j = 0; j < n; ++j) drow[j] = cplx(0.0, 0.0);
        const cplx* arow = a.data() + static_cast<std::size_t>(i) * k;
        for (int l = 0; l < k; ++l) {
            const cplx av = arow[l];
            if (av == cplx(0.0, 0.0)) continue;
            const cplx* brow = b.data() + static_cast<std::size_t>(l) * n;
            for (int j = 0; j < n; ++j) drow[j] += av * brow[j];
        }
    }
}

void kron(CMatrix& dst, const CMatrix& a, const CMatrix& b) {
    const int ar = a.rows(), ac = a.cols(), br = b.rows(), bc = b.cols();
    for (int i = 0; i < ar; ++i)
        for (int k = 0; k < br; ++k) {
            cplx* drow = dst.data() + (static_cast<std::size_t>(i) * br + k) * (static_cast<std::size_t>(ac) * bc);
            const cplx* brow = b.data() + static_cast<std::size_t>(k) * bc;
            for (int j = 0; j < ac; ++j) {
                const cplx av = a(i, j);
                cplx* dblk = drow + static_cast<std::size_t>(j) * bc;
                for (int l = 0; l < bc; ++l) dblk[l] = av * brow[l];
            }
        }
}

void add_scaled(CMatrix& dst, cplx s, const CMatrix& x) {
    const std::size_t n = dst.size();
    cplx* d = dst.data();
    const cplx* xs = x.data();
    for (std::size_t i = 0; i < n; ++i) d[i] += s * xs[i];
}

double frobenius(const CMatrix& a) {
    double acc = 0.0;
    const cplx* p = a.data();
    for (std::size_t i = 0; i < a.size(); ++i) acc += std::norm(p[i]);
    return std::sqrt(acc);
}

} // namespace serial

// Parallel versions write disjoint output ranges only, so the result is
// bit-identical for any thread count.

void matmul(CMatrix& dst, const CMatrix& a, const CMatrix& b) {
    const int m = a.rows(), k = a.cols(), n = b.cols();
    if (static_cast<std::size_t>(m) * n < 4096) {
        serial::matmul(dst, a, b);
        return;
    }
#pragma omp parallel for schedule(static)
    for (int i = 0; i < m; ++i) {
        cplx* drow = dst.data() + static_cast<std::size_t>(i) * n;
        for (int j = 0; j < n; ++j) drow[j] = cplx(0.0, 0.0);
        const cplx* arow = a.data() + static_cast<std::size_t>(i) * k;
        for (int l = 0; l < k; ++l) {
            const cplx av = arow[l];
            if (av == cplx(0.0, 0.0)) continue;
            const cplx* brow = b.data() + static_cast<std::size_t>(l) * n;
            for (int j = 0; j < n; ++j) drow[j] += av * brow[j];
        }
    }
}

void kron(CMatrix& dst, const CMatrix& a, const CMatrix& b) {
    const int ar = a.rows(), ac = a.cols(), br = b.rows(), bc = b.cols();
    if (dst.size() < 4096) {
        serial::kron(dst, a, b);
        return;
    }
#pragma omp parallel for collapse(2) schedule(static)
    for (int i = 0; i < ar; ++i)
        for (int k = 0; k < br; ++k) {
            cplx* drow = dst.data() + (static_cast<std::size_t>(i) * br + k) * (static_cast<std::size_t>(ac) * bc);
            const cplx* brow = b.data() + static_cast<std::size_t>(k) * bc;
            for (int j = 0; j < ac; ++j) {
                const cplx av = a(i, j);
                cplx* dblk = drow + static_cast<std::size_t>(j) * bc;
                for (int l = 0; l < bc; ++l) dblk[l] = av * brow[l];
            }
        }
}

void add_scaled(CMatrix& dst, cplx s, const CMatrix& x) {
    const std::size_t n = dst.size();
    cplx* d = dst.data();
    const cplx* xs = x.data();
    if (n < 8192) {
        serial::add_scaled(dst, s, x);
        return;
    }
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(n); ++i) d[i] += s * xs[i];
}

double frobenius(const CMatrix& a) {
    // Fixed summation order (serial) keeps results independent of thread count.
    return serial::frobenius(a);
}

} // namespace sixv::kern
