#ifndef LUEQUIV_CLASSIFY_HPP
#define LUEQUIV_CLASSIFY_HPP

#include <string>
#include <vector>

#include "luequiv/equivalence.hpp"
#include "luequiv/product_opt.hpp"
#include "luequiv/spectral.hpp"

namespace luequiv {

// A found product vector is a proof; a failed search is evidence only.
enum class MembershipEvidence { Proven, RefutedNumerically };

enum class ExtremalPt { MaxEntTwoQubit, PureProduct, Neither };

const char* to_string(MembershipEvidence e);
const char* to_string(ExtremalPt e);

struct EigenspaceReport {
    double eigenvalue = 0.0;
    std::size_t multiplicity = 0;
    bool product_found = false;      // a product vector exists in the eigenspace
    bool product_proof = false;      // entanglement of the eigenspace is proven
    bool spanned_by_products = false;
    double best_overlap = 0.0;       // best product overlap reached by the search
};

struct StateClassification {
    double trace = 0.0;
    bool is_npt = false;
    bool is_ppt = false;
    bool ppt_boundary = false;  // pt_min within 1e-9 of zero, resolved toward PPT
    double pt_min = 0.0;
    double pt_max = 0.0;
    // d_lambda: some eigenspace contains no product vector
    bool d_lambda = false;
    MembershipEvidence d_lambda_evidence = MembershipEvidence::RefutedNumerically;
    // d_lambda_bar: some eigenspace is not spanned by product vectors
    bool d_lambda_bar = false;
    MembershipEvidence d_lambda_bar_evidence = MembershipEvidence::RefutedNumerically;
    ExtremalPt extremal = ExtremalPt::Neither;
    bool separable_certified = false;  // PPT at 2x2 / 2x3 only
    bool ppt_entangled_candidate = false;
    std::vector<EigenspaceReport> eigenspaces;
};

StateClassification classify(const BipartiteOperator& rho, const SeesawOptions& opts = {});

// Requires trace one within 1e-9.
ExtremalPt detect_extremal_pt(const BipartiteOperator& rho);

}  // namespace luequiv

#endif
