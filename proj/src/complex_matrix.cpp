#include "luequiv/complex_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace luequiv {

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(const std::vector<double>& d) {
    ComplexMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

ComplexMatrix ComplexMatrix::outer(const CVec& x, const CVec& y) {
    ComplexMatrix m(x.size(), y.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < y.size(); ++j) m(i, j) = x[i] * std::conj(y[j]);
    return m;
}

ComplexMatrix ComplexMatrix::from_column(const CVec& x) {
    ComplexMatrix m(x.size(), 1);
    for (std::size_t i = 0; i < x.size(); ++i) m(i, 0) = x[i];
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
    return m;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
    return m;
}

ComplexMatrix ComplexMatrix::conjugate() const {
    ComplexMatrix m(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] = std::conj(data_[i]);
    return m;
}

cplx ComplexMatrix::trace() const {
    cplx t = 0.0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const auto& z : data_) s += std::norm(z);
    return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
    double s = 0.0;
    for (const auto& z : data_) s = std::max(s, std::abs(z));
    return s;
}

CVec ComplexMatrix::column(std::size_t j) const {
    CVec v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

void ComplexMatrix::set_column(std::size_t j, const CVec& v) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

bool ComplexMatrix::is_hermitian(double tol) const {
    if (rows_ != cols_) return false;
    const double scale = 1.0 + max_abs();
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i; j < cols_; ++j)
            if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol * scale) return false;
    return true;
}

bool ComplexMatrix::is_unitary(double tol) const {
    if (rows_ != cols_) return false;
    ComplexMatrix g = adjoint() * (*this);
    g -= identity(rows_);
    return g.max_abs() <= tol;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix size mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix size mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
    for (auto& z : data_) z *= s;
    return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix product size mismatch");
    ComplexMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx(0.0)) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }

CVec mat_vec(const ComplexMatrix& a, const CVec& x) {
    if (a.cols() != x.size()) throw std::invalid_argument("mat_vec size mismatch");
    CVec y(a.rows(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) y[i] += a(i, j) * x[j];
    return y;
}

cplx inner(const CVec& x, const CVec& y) {
    cplx s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += std::conj(x[i]) * y[i];
    return s;
}

double norm(const CVec& x) { return std::sqrt(std::real(inner(x, x))); }

void normalize(CVec& x) {
    const double n = norm(x);
    if (n == 0.0) throw std::invalid_argument("cannot normalize zero vector");
    for (auto& z : x) z /= n;
}

CVec kron_vec(const CVec& a, const CVec& b) {
    CVec v(a.size() * b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) v[i * b.size() + j] = a[i] * b[j];
    return v;
}

}  // namespace luequiv
