#ifndef LUEQUIV_LINALG_HPP
#define LUEQUIV_LINALG_HPP

#include <cstddef>
#include <vector>

#include "luequiv/complex_matrix.hpp"
#include "luequiv/tolerances.hpp"

namespace luequiv {

// An mn x mn Hermitian operator tagged with its local dimensions.
struct BipartiteOperator {
    std::size_t dim_a = 0;
    std::size_t dim_b = 0;
    ComplexMatrix mat;

    BipartiteOperator() = default;
    // Validates Hermiticity and the size contract; throws std::invalid_argument.
    BipartiteOperator(std::size_t m, std::size_t n, ComplexMatrix mtx,
                      const Tolerances& tol = default_tolerances());

    std::size_t dim() const { return dim_a * dim_b; }
};

// A pair (U, V) representing U (x) V; the certificate of LU equivalence.
struct LocalUnitary {
    ComplexMatrix u;
    ComplexMatrix v;

    LocalUnitary() = default;
    LocalUnitary(ComplexMatrix uu, ComplexMatrix vv,
                 const Tolerances& tol = default_tolerances());

    static LocalUnitary identity(std::size_t m, std::size_t n);
    ComplexMatrix full() const;  // U (x) V
};

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

BipartiteOperator partial_transpose(const BipartiteOperator& x);

enum class Factor { A, B };
ComplexMatrix partial_trace(const BipartiteOperator& x, Factor which);

struct EigResult {
    std::vector<double> values;  // ascending
    ComplexMatrix vectors;       // orthonormal columns, vectors.col(i) <-> values[i]
};

// Cyclic complex Jacobi eigendecomposition; input must be Hermitian.
EigResult hermitian_eig(const ComplexMatrix& h,
                        const Tolerances& tol = default_tolerances());

// exp(i g) via eigendecomposition of the Hermitian generator g.
ComplexMatrix unitary_from_generator(const ComplexMatrix& g,
                                     const Tolerances& tol = default_tolerances());

// (U (x) V) x (U (x) V)^dag with the dimension tags carried over.
BipartiteOperator conjugate_lu(const BipartiteOperator& x, const LocalUnitary& lu);

BipartiteOperator shift(const BipartiteOperator& x, double c);  // x + c I

}  // namespace luequiv

#endif
