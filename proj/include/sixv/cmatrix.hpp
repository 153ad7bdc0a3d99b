#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "sixv/error.hpp"

namespace sixv {

using cplx = std::complex<double>;

/// Dense complex matrix, row-major.  The single carrier type for every
/// operator in the workbench; kept deliberately small.  Heavy kernels
/// (matmul, kron) live in kernels.hpp and have both an OpenMP and a
/// serial reference implementation.
class CMatrix {
public:
    CMatrix() : rows_(0), cols_(0) {}
    CMatrix(int rows, int cols);

    static CMatrix zero(int rows, int cols) { return CMatrix(rows, cols); }
    static CMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }
    std::size_t size() const { return a_.size(); }

    cplx& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
    const cplx& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

    cplx* data() { return a_.data(); }
    const cplx* data() const { return a_.data(); }

    CMatrix operator+(const CMatrix& other) const;
    CMatrix operator-(const CMatrix& other) const;
    CMatrix operator*(const CMatrix& other) const; // parallel kernel
    CMatrix operator*(cplx s) const;
    CMatrix& operator+=(const CMatrix& other);
    CMatrix& operator-=(const CMatrix& other);
    CMatrix& operator*=(cplx s);

    CMatrix transpose() const;
    CMatrix conj_transpose() const;

    cplx trace() const;
    double frobenius() const;
    double max_abs() const;
    bool all_finite() const;

    std::vector<cplx> apply(const std::vector<cplx>& v) const;

    bool same_shape(const CMatrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_;
    }

private:
    int rows_, cols_;
    std::vector<cplx> a_;
};

inline CMatrix operator*(cplx s, const CMatrix& m) { return m * s; }

/// Configurable cap on matrix entry count; constructors and kron reject
/// anything larger so that runaway dimension products fail fast.
std::size_t matrix_entry_cap();
void set_matrix_entry_cap(std::size_t cap);

/// Kronecker product, A's indices most significant.
CMatrix kron(const CMatrix& a, const CMatrix& b);

/// I (x) ... (x) op2 (x) ... (x) I with op2 at tensor factor m (1-based).
/// Site 1 is the leftmost (most significant) factor.
CMatrix embed_site(const CMatrix& op2, int m, int M);

/// ||AB - BA||_F / max(1, ||A||_F ||B||_F).
double commutator_residual(const CMatrix& a, const CMatrix& b);

// Pauli matrices in the basis {|0> = up, |1> = down}.
CMatrix pauli_x();
CMatrix pauli_y();
CMatrix pauli_z();
CMatrix pauli_plus();
CMatrix pauli_minus();

/// 0.5 * sum_m sigma^z_m on (C^2)^{(x)M}; diagonal.
CMatrix total_sz(int M);

/// Spin-reversal operator prod_m sigma^x_m (bit-flip permutation).
CMatrix spin_reversal(int M);

std::vector<cplx> operator+(const std::vector<cplx>& a, const std::vector<cplx>& b);
std::vector<cplx> operator-(const std::vector<cplx>& a, const std::vector<cplx>& b);
std::vector<cplx> operator*(cplx s, const std::vector<cplx>& v);
double vec_norm(const std::vector<cplx>& v);
cplx vec_dot(const std::vector<cplx>& a, const std::vector<cplx>& b); // conj(a) . b

} // namespace sixv
