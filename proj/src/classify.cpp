#include "luequiv/classify.hpp"

#include <cmath>
#include <stdexcept>

namespace luequiv {

const char* to_string(MembershipEvidence e) {
    switch (e) {
        case MembershipEvidence::Proven: return "Proven";
        case MembershipEvidence::RefutedNumerically: return "RefutedNumerically";
    }
    return "?";
}

const char* to_string(ExtremalPt e) {
    switch (e) {
        case ExtremalPt::MaxEntTwoQubit: return "MaxEntTwoQubit";
        case ExtremalPt::PureProduct: return "PureProduct";
        case ExtremalPt::Neither: return "Neither";
    }
    return "?";
}

namespace {

// Rank-one eigenspace with an entangled eigenvector: Schmidt rank >= 2 proves
// the eigenspace contains no product vector.
bool rank_one_entangled(const BipartiteOperator& p) {
    if (std::llround(std::real(p.mat.trace())) != 1) return false;
    EigResult e = hermitian_eig(p.mat);
    SchmidtForm s = schmidt_decompose(e.vectors.column(p.dim() - 1), p.dim_a, p.dim_b);
    return s.coefficients.size() >= 2;
}

}  // namespace

ExtremalPt detect_extremal_pt(const BipartiteOperator& rho) {
    if (std::abs(std::real(rho.mat.trace()) - 1.0) > 1e-9)
        throw std::invalid_argument("detect_extremal_pt: state must have unit trace");
    EigResult e = hermitian_eig(partial_transpose(rho).mat);
    if (rho.dim_a == 2 && rho.dim_b == 2 && e.values.front() <= -0.5 + 1e-8)
        return ExtremalPt::MaxEntTwoQubit;
    if (e.values.back() >= 1.0 - 1e-8) return ExtremalPt::PureProduct;
    return ExtremalPt::Neither;
}

StateClassification classify(const BipartiteOperator& rho, const SeesawOptions& opts) {
    EigResult e = hermitian_eig(rho.mat);
    if (e.values.front() < -1e-9)
        throw std::invalid_argument("classify: operator is not positive semidefinite");

    StateClassification c;
    c.trace = std::real(rho.mat.trace());
    EigResult ept = hermitian_eig(partial_transpose(rho).mat);
    c.pt_min = ept.values.front();
    c.pt_max = ept.values.back();
    c.is_ppt = c.pt_min > -1e-9;
    c.is_npt = !c.is_ppt;
    c.ppt_boundary = c.is_ppt && c.pt_min <= 0.0;

    SpectralDecomposition sd = spectral_decompose(rho);
    bool any_no_product = false, any_no_product_proof = false, any_not_spanned = false;
    for (std::size_t i = 0; i < sd.projectors.size(); ++i) {
        EigenspaceReport rep;
        rep.eigenvalue = sd.eigenvalues[i];
        rep.multiplicity = sd.multiplicities[i];
        ProductSearchVerdict pv = contains_product_vector(sd.projectors[i], opts);
        rep.product_found = pv.found;
        rep.best_overlap = pv.best_value;
        if (!pv.found) {
            any_no_product = true;
            rep.product_proof = rank_one_entangled(sd.projectors[i]);
            any_no_product_proof = any_no_product_proof || rep.product_proof;
            rep.spanned_by_products = false;
            any_not_spanned = true;
        } else {
            SpanVerdict sv = spanned_by_product_vectors(sd.projectors[i], opts);
            rep.spanned_by_products = sv.spanned;
            any_not_spanned = any_not_spanned || !sv.spanned;
        }
        c.eigenspaces.push_back(rep);
    }

    c.d_lambda = any_no_product;
    c.d_lambda_evidence = any_no_product_proof ? MembershipEvidence::Proven
                                               : MembershipEvidence::RefutedNumerically;
    c.d_lambda_bar = c.d_lambda || any_not_spanned;
    c.d_lambda_bar_evidence = any_no_product_proof ? MembershipEvidence::Proven
                                                   : MembershipEvidence::RefutedNumerically;

    c.extremal = std::abs(c.trace - 1.0) <= 1e-9 ? detect_extremal_pt(rho) : ExtremalPt::Neither;
    const bool low_dim = (rho.dim_a == 2 && rho.dim_b == 2) ||
                         (rho.dim_a == 2 && rho.dim_b == 3) ||
                         (rho.dim_a == 3 && rho.dim_b == 2);
    c.separable_certified = c.is_ppt && low_dim;
    c.ppt_entangled_candidate = c.is_ppt && !c.separable_certified && c.d_lambda_bar;
    return c;
}

}  // namespace luequiv
