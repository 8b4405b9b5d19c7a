#ifndef LUEQUIV_WITNESS_HPP
#define LUEQUIV_WITNESS_HPP

#include <optional>
#include <vector>

#include "luequiv/product_opt.hpp"
#include "luequiv/spectral.hpp"

namespace luequiv {

enum class WitnessStatus { VerifiedEW, NotBlockPositive, PositiveSemidefinite, Unverified };

const char* to_string(WitnessStatus s);

struct WitnessCandidate {
    BipartiteOperator op;
    double min_eigenvalue = 0.0;
    double min_product_value = 0.0;
    WitnessStatus status = WitnessStatus::Unverified;
    // populated when status == NotBlockPositive
    std::optional<ProductVector> violation;
};

struct UpbSpec {
    std::vector<ProductVector> members;  // pairwise orthogonal products
    std::size_t dim_a = 0;
    std::size_t dim_b = 0;
};

WitnessCandidate verify_witness(const BipartiteOperator& w, const SeesawOptions& opts = {});

struct TopWitnessResult {
    WitnessCandidate w1;
    WitnessCandidate w2;
    double mu = 0.0;
};

// W_i = mu I - rho_i with mu the product-manifold maximum over both states.
// Fails with status PositiveSemidefinite when mu reaches the top eigenvalue.
TopWitnessResult witness_from_state_top(const BipartiteOperator& rho1,
                                        const BipartiteOperator& rho2,
                                        const SeesawOptions& opts = {});

struct EigenspaceWitnessResult {
    WitnessCandidate w;
    double mu = 0.0;
    double p_max = 0.0;
    double p_min = 0.0;
};

// W = -mu P_j + sum_{i != j} lambda_i P_i for a full-rank state, with
// mu bounded by p_min / p_max (0.99 safety factor).
EigenspaceWitnessResult witness_from_eigenspace(const BipartiteOperator& rho, std::size_t j,
                                                const SeesawOptions& opts = {});

// rho_x = w + x I; Auto (no x supplied) picks x = max(0, -lambda_min) + 1.
BipartiteOperator state_from_witness(const BipartiteOperator& w,
                                     std::optional<double> x = std::nullopt);

// Smallest convenient x making both w + xI and its partial transpose PSD.
double ppt_guarantee_x(const BipartiteOperator& w);

// Keep the spectral projectors, substitute a new descending positive spectrum.
BipartiteOperator positive_relabel(const BipartiteOperator& h,
                                   const std::vector<double>& new_eigenvalues);

// sigma = (I - sum |a_i,b_i><a_i,b_i|) / (mn - l)
BipartiteOperator upb_state(const UpbSpec& upb);

}  // namespace luequiv

#endif
