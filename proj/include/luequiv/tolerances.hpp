#ifndef LUEQUIV_TOLERANCES_HPP
#define LUEQUIV_TOLERANCES_HPP

namespace luequiv {

// Central tolerance record shared by the library, the CLI and the tests.
struct Tolerances {
    double hermiticity = 1e-12;        // relative, on operator construction
    double orthonormality = 1e-10;     // eigenvector columns, unitarity
    double reconstruction = 1e-10;     // eigendecomposition residual
    double jacobi_offdiag = 1e-13;     // Jacobi sweep stop, relative Frobenius mass
    double group_tol = 1e-8;           // relative eigenvalue clustering
    double projector = 1e-9;           // idempotence / orthogonality of projectors
    double psd = 1e-9;                 // PSD slack on state inputs
    double accept = 1e-7;              // SLU search acceptance residual
    double rank = 1e-8;                // numerical rank threshold
};

inline const Tolerances& default_tolerances() {
    static const Tolerances t{};
    return t;
}

}  // namespace luequiv

#endif
