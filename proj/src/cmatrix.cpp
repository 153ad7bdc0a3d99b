#include "sixv/cmatrix.hpp"

#include <atomic>
#include <cmath>

#include "sixv/kernels.hpp"

namespace sixv {

namespace {
std::atomic<std::size_t> g_entry_cap{std::size_t(1) << 24};
}

std::size_t matrix_entry_cap() { return g_entry_cap.load(); }
void set_matrix_entry_cap(std::size_t cap) { g_entry_cap.store(cap); }

CMatrix::CMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows < 0 || cols < 0) throw SizeError("CMatrix: negative dimension");
    const std::size_t n = static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
    if (n > matrix_entry_cap()) throw SizeError("CMatrix: entry count exceeds cap");
    a_.assign(n, cplx(0.0, 0.0));
}

CMatrix CMatrix::identity(int n) {
    CMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = cplx(1.0, 0.0);
    return m;
}

CMatrix CMatrix::operator+(const CMatrix& other) const {
    if (!same_shape(other)) throw SizeError("CMatrix+: shape mismatch");
    CMatrix r(*this);
    kern::add_scaled(r, cplx(1.0, 0.0), other);
    return r;
}

CMatrix CMatrix::operator-(const CMatrix& other) const {
    if (!same_shape(other)) throw SizeError("CMatrix-: shape mismatch");
    CMatrix r(*this);
    kern::add_scaled(r, cplx(-1.0, 0.0), other);
    return r;
}

CMatrix CMatrix::operator*(const CMatrix& other) const {
    if (cols_ != other.rows_) throw SizeError("CMatrix*: inner dimension mismatch");
    CMatrix r(rows_, other.cols_);
    kern::matmul(r, *this, other);
    return r;
}

CMatrix CMatrix::operator*(cplx s) const {
    CMatrix r(*this);
    for (auto& x : r.a_) x *= s;
    return r;
}

CMatrix& CMatrix::operator+=(const CMatrix& other) {
    if (!same_shape(other)) throw SizeError("CMatrix+=: shape mismatch");
    kern::add_scaled(*this, cplx(1.0, 0.0), other);
    return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& other) {
    if (!same_shape(other)) throw SizeError("CMatrix-=: shape mismatch");
    kern::add_scaled(*this, cplx(-1.0, 0.0), other);
    return *this;
}

CMatrix& CMatrix::operator*=(cplx s) {
    for (auto& x : a_) x *= s;
    return *this;
}

CMatrix CMatrix::transpose() const {
    CMatrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
}

CMatrix CMatrix::conj_transpose() const {
    CMatrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
    return r;
}

cplx CMatrix::trace() const {
    cplx t(0.0, 0.0);
    const int n = rows_ < cols_ ? rows_ : cols_;
    for (int i = 0; i < n; ++i) t += (*this)(i, i);
    return t;
}

double CMatrix::frobenius() const { return kern::frobenius(*this); }

double CMatrix::max_abs() const {
    double m = 0.0;
    for (const auto& x : a_) m = std::max(m, std::abs(x));
    return m;
}

bool CMatrix::all_finite() const {
    for (const auto& x : a_)
        if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) return false;
    return true;
}

std::vector<cplx> CMatrix::apply(const std::vector<cplx>& v) const {
    if (static_cast<int>(v.size()) != cols_) throw SizeError("CMatrix::apply: length mismatch");
    std::vector<cplx> r(rows_, cplx(0.0, 0.0));
    for (int i = 0; i < rows_; ++i) {
        cplx acc(0.0, 0.0);
        const cplx* row = a_.data() + static_cast<std::size_t>(i) * cols_;
        for (int j = 0; j < cols_; ++j) acc += row[j] * v[j];
        r[i] = acc;
    }
    return r;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    if (!a.all_finite() || !b.all_finite()) throw Error("kron: non-finite input");
    const std::size_t n = static_cast<std::size_t>(a.rows()) * b.rows() *
                          static_cast<std::size_t>(a.cols()) * b.cols();
    if (n > matrix_entry_cap()) throw SizeError("kron: result exceeds entry cap");
    CMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
    kern::kron(r, a, b);
    return r;
}

CMatrix embed_site(const CMatrix& op2, int m, int M) {
    if (op2.rows() != 2 || op2.cols() != 2) throw SizeError("embed_site: operator must be 2x2");
    if (m < 1 || m > M) throw SizeError("embed_site: site index out of range");
    const int dl = 1 << (m - 1), dr = 1 << (M - m);
    return kron(kron(CMatrix::identity(dl), op2), CMatrix::identity(dr));
}

double commutator_residual(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != a.cols() || !a.same_shape(b))
        throw SizeError("commutator_residual: need equal square matrices");
    const CMatrix comm = a * b - b * a;
    const double denom = std::max(1.0, a.frobenius() * b.frobenius());
    return comm.frobenius() / denom;
}

CMatrix pauli_x() {
    CMatrix m(2, 2);
    m(0, 1) = 1.0;
    m(1, 0) = 1.0;
    return m;
}

CMatrix pauli_y() {
    CMatrix m(2, 2);
    m(0, 1) = cplx(0.0, -1.0);
    m(1, 0) = cplx(0.0, 1.0);
    return m;
}

CMatrix pauli_z() {
    CMatrix m(2, 2);
    m(0, 0) = 1.0;
    m(1, 1) = -1.0;
    return m;
}

CMatrix pauli_plus() {
    CMatrix m(2, 2);
    m(0, 1) = 1.0;
    return m;
}

CMatrix pauli_minus() {
    CMatrix m(2, 2);
    m(1, 0) = 1.0;
    return m;
}

CMatrix total_sz(int M) {
    const int dim = 1 << M;
    CMatrix m(dim, dim);
    for (int b = 0; b < dim; ++b) {
        const int ndown = __builtin_popcount(static_cast<unsigned>(b));
        m(b, b) = 0.5 * (M - 2 * ndown);
    }
    return m;
}

CMatrix spin_reversal(int M) {
    const int dim = 1 << M;
    CMatrix m(dim, dim);
    for (int b = 0; b < dim; ++b) m(b, (dim - 1) ^ b) = 1.0;
    return m;
}

std::vector<cplx> operator+(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    std::vector<cplx> r(a);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

std::vector<cplx> operator-(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    std::vector<cplx> r(a);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

std::vector<cplx> operator*(cplx s, const std::vector<cplx>& v) {
    std::vector<cplx> r(v);
    for (auto& x : r) x *= s;
    return r;
}

double vec_norm(const std::vector<cplx>& v) {
    double acc = 0.0;
    for (const auto& x : v) acc += std::norm(x);
    return std::sqrt(acc);
}

cplx vec_dot(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    cplx acc(0.0, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
    return acc;
}

} // namespace sixv
