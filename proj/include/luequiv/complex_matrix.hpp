#ifndef LUEQUIV_COMPLEX_MATRIX_HPP
#define LUEQUIV_COMPLEX_MATRIX_HPP

#include <complex>
#include <cstddef>
#include <vector>

namespace luequiv {

using cplx = std::complex<double>;
using CVec = std::vector<cplx>;

// Dense row-major complex matrix. Sizes here are tiny (<= 16x16 for the
// bipartite operators handled by this library), so no blocking or sparsity.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix diagonal(const std::vector<double>& d);
    static ComplexMatrix outer(const CVec& x, const CVec& y);  // |x><y|
    static ComplexMatrix from_column(const CVec& x);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<cplx>& data() const { return data_; }
    std::vector<cplx>& data() { return data_; }

    ComplexMatrix adjoint() const;
    ComplexMatrix transpose() const;
    ComplexMatrix conjugate() const;

    cplx trace() const;
    double frobenius_norm() const;
    double max_abs() const;

    CVec column(std::size_t j) const;
    void set_column(std::size_t j, const CVec& v);

    bool is_hermitian(double tol) const;
    bool is_unitary(double tol) const;

    ComplexMatrix& operator+=(const ComplexMatrix& o);
    ComplexMatrix& operator-=(const ComplexMatrix& o);
    ComplexMatrix& operator*=(cplx s);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(cplx s, ComplexMatrix a);

CVec mat_vec(const ComplexMatrix& a, const CVec& x);
cplx inner(const CVec& x, const CVec& y);  // <x|y>, conjugate-linear in x
double norm(const CVec& x);
void normalize(CVec& x);
CVec kron_vec(const CVec& a, const CVec& b);

}  // namespace luequiv

#endif
