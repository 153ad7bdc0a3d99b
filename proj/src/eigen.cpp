#include "sixv/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <lapacke.h>
#include <string>

// When the BLAS underneath is OpenBLAS, pin it to one thread: the matrices
// here are small and single-threaded BLAS keeps results reproducible no
// matter what --threads is set to.
extern "C" void openblas_set_num_threads(int) __attribute__((weak));

namespace sixv {

namespace {

struct BlasInit {
    BlasInit() {
        if (openblas_set_num_threads) openblas_set_num_threads(1);
    }
};
const BlasInit g_blas_init;

using lz = lapack_complex_double;

lz* as_lapack(cplx* p) { return reinterpret_cast<lz*>(p); }

} // namespace

std::vector<EigenPair> eigenpairs(const CMatrix& a, double tol) {
    if (a.rows() != a.cols()) throw SizeError("eigenpairs: matrix not square");
    const int n = a.rows();
    CMatrix work(a);
    std::vector<cplx> w(n);
    CMatrix vr(n, n);
    const int info = LAPACKE_zgeev(LAPACK_ROW_MAJOR, 'N', 'V', n, as_lapack(work.data()), n,
                                   as_lapack(w.data()), nullptr, n, as_lapack(vr.data()), n);
    if (info != 0)
        throw ConvergenceError("eigenpairs: zgeev failed to converge, info=" + std::to_string(info));

    std::vector<EigenPair> out(n);
    double worst = 0.0;
    for (int j = 0; j < n; ++j) {
        EigenPair& p = out[j];
        p.value = w[j];
        p.vector.resize(n);
        for (int i = 0; i < n; ++i) p.vector[i] = vr(i, j);
        const double nv = vec_norm(p.vector);
        if (nv > 0.0)
            for (auto& x : p.vector) x /= nv;
        std::vector<cplx> av = a.apply(p.vector);
        double res = 0.0;
        for (int i = 0; i < n; ++i) res += std::norm(av[i] - p.value * p.vector[i]);
        p.residual = std::sqrt(res);
        worst = std::max(worst, p.residual);
    }
    if (worst > tol)
        throw ConvergenceError("eigenpairs: residual " + std::to_string(worst) +
                               " exceeds tolerance " + std::to_string(tol));
    std::sort(out.begin(), out.end(), [](const EigenPair& x, const EigenPair& y) {
        if (x.value.real() != y.value.real()) return x.value.real() < y.value.real();
        return x.value.imag() < y.value.imag();
    });
    return out;
}

std::vector<cplx> eigenvalues(const CMatrix& a) {
    if (a.rows() != a.cols()) throw SizeError("eigenvalues: matrix not square");
    const int n = a.rows();
    CMatrix work(a);
    std::vector<cplx> w(n);
    const int info = LAPACKE_zgeev(LAPACK_ROW_MAJOR, 'N', 'N', n, as_lapack(work.data()), n,
                                   as_lapack(w.data()), nullptr, n, nullptr, n);
    if (info != 0)
        throw ConvergenceError("eigenvalues: zgeev failed, info=" + std::to_string(info));
    std::sort(w.begin(), w.end(), [](const cplx& x, const cplx& y) {
        if (x.real() != y.real()) return x.real() < y.real();
        return x.imag() < y.imag();
    });
    return w;
}

std::vector<cplx> solve_linear(CMatrix a, std::vector<cplx> b) {
    if (a.rows() != a.cols() || a.rows() != static_cast<int>(b.size()))
        throw SizeError("solve_linear: shape mismatch");
    const int n = a.rows();
    std::vector<lapack_int> ipiv(n);
    const int info = LAPACKE_zgesv(LAPACK_ROW_MAJOR, n, 1, as_lapack(a.data()), n, ipiv.data(),
                                   as_lapack(b.data()), 1);
    if (info != 0)
        throw ConvergenceError("solve_linear: zgesv failed, info=" + std::to_string(info));
    return b;
}

std::vector<cplx> lstsq(CMatrix a, std::vector<cplx> b) {
    const int m = a.rows(), n = a.cols();
    if (m < n || m != static_cast<int>(b.size())) throw SizeError("lstsq: shape mismatch");
    const int info = LAPACKE_zgels(LAPACK_ROW_MAJOR, 'N', m, n, 1, as_lapack(a.data()), n,
                                   as_lapack(b.data()), 1);
    if (info != 0)
        throw ConvergenceError("lstsq: zgels failed, info=" + std::to_string(info));
    b.resize(n);
    return b;
}

} // namespace sixv
