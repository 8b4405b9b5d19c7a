#ifndef LUEQUIV_SPECTRAL_HPP
#define LUEQUIV_SPECTRAL_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "luequiv/linalg.hpp"

namespace luequiv {

// H = sum_j lambda_j P_j with distinct eigenvalues in descending order.
struct SpectralDecomposition {
    std::vector<double> eigenvalues;             // strictly descending, distinct
    std::vector<BipartiteOperator> projectors;   // orthogonal, sum to I
    std::vector<std::size_t> multiplicities;
};

struct SchmidtForm {
    std::vector<double> coefficients;  // descending, positive
    std::vector<CVec> basis_a;
    std::vector<CVec> basis_b;
};

SpectralDecomposition spectral_decompose(const BipartiteOperator& h,
                                         double group_tol = default_tolerances().group_tol);

struct SpectraMatchReport {
    bool match = false;
    // index of the first diverging distinct eigenvalue or multiplicity, -1 when matching
    int first_mismatch = -1;
    std::string reason;
};

SpectraMatchReport spectra_match(const BipartiteOperator& h, const BipartiteOperator& k,
                                 double tol = 1e-8);

// PT eigenvalues of |psi><psi| in closed form: {l_i^2} u {+- l_i l_j}, zero padded to mn.
std::vector<double> pure_pt_spectrum(const SchmidtForm& s, std::size_t dim_a, std::size_t dim_b);

SchmidtForm schmidt_decompose(const CVec& psi, std::size_t m, std::size_t n);

}  // namespace luequiv

#endif
