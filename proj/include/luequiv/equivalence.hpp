#ifndef LUEQUIV_EQUIVALENCE_HPP
#define LUEQUIV_EQUIVALENCE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "luequiv/product_opt.hpp"
#include "luequiv/spectral.hpp"

namespace luequiv {

enum class VerdictKind { Equivalent, Inequivalent, Undecided };

enum class CertificateKind {
    SpectrumMismatch,
    LocalSpectrumMismatch,
    SchmidtMismatch,
    CommutantObstruction,
    ClassMismatch,
};

const char* to_string(VerdictKind k);
const char* to_string(CertificateKind k);

struct InequivalenceCertificate {
    CertificateKind kind;
    int index = -1;          // projector / eigenvalue index the certificate names
    std::optional<Factor> factor;  // for LocalSpectrumMismatch
    std::string detail;
};

// Three-valued answer; numerical search failure is never reported as Inequivalent.
struct EquivalenceVerdict {
    VerdictKind kind = VerdictKind::Undecided;
    double residual = 0.0;  // accepted residual, or best residual when Undecided
    LocalUnitary lu;        // certificate when Equivalent, best candidate when Undecided
    std::optional<InequivalenceCertificate> certificate;
};

struct SearchOptions {
    std::size_t restarts = 32;
    std::uint64_t seed = 42;
    double accept_tol = 1e-7;
    double pattern_step_init = 0.5;
    double pattern_step_min = 1e-6;
    std::size_t polar_iters = 200;
    SeesawOptions product_opts{};  // for screens that call into product_opt
};

// LU-invariant record: global spectrum, per-projector local spectra, and
// Schmidt coefficients of rank-one projectors.
struct LuInvariants {
    std::vector<double> eigenvalues;
    std::vector<std::size_t> multiplicities;
    std::vector<std::vector<double>> local_spectra_a;  // per projector, sorted
    std::vector<std::vector<double>> local_spectra_b;
    std::vector<std::optional<std::vector<double>>> schmidt;  // rank-one projectors only
};

LuInvariants lu_invariants(const BipartiteOperator& h);

EquivalenceVerdict decide_lu(const BipartiteOperator& h, const BipartiteOperator& k,
                             const SearchOptions& opts = {});

EquivalenceVerdict decide_slu(const std::vector<BipartiteOperator>& ps,
                              const std::vector<BipartiteOperator>& qs,
                              const SearchOptions& opts = {});

// Conjugate every q by the pair witness; verdict-preserving per the fixed set.
std::vector<BipartiteOperator> gauge_fix(const std::vector<BipartiteOperator>& ps,
                                         const std::vector<BipartiteOperator>& qs,
                                         const LocalUnitary& pair_witness,
                                         const std::vector<std::size_t>& fixed);

struct BlockPartition {
    std::vector<std::vector<std::size_t>> blocks;  // disjoint, covering, each sorted
    std::size_t size() const;
};

// Index partition by eigenvalue; unitaries commuting with h are exactly the
// block unitaries of this partition in h's eigenbasis.
BlockPartition commutant_blocks(const ComplexMatrix& h);

BlockPartition refine_partition(const std::vector<BlockPartition>& parts);

struct DiagonalReachability {
    bool reachable = false;
    std::vector<std::size_t> permutation;  // k -> destination index, when reachable
    int blocking_block = -1;               // index into the meet partition otherwise
    std::string detail;
};

// Is diag(target) = U diag(source) U^dag for some U commuting with every fixed diagonal?
DiagonalReachability diagonal_slu_decide(const std::vector<std::vector<double>>& fixed_diagonals,
                                         const std::vector<double>& source,
                                         const std::vector<double>& target);

struct FiniteLuGroup {
    std::vector<LocalUnitary> elements;

    // closure under product and identity membership, up to per-factor global phase
    bool verify_closed() const;
};

// Equality of LU operators up to a global phase on each factor.
bool lu_equal_up_to_phase(const LocalUnitary& x, const LocalUnitary& y, double tol = 1e-8);

BipartiteOperator twirl_finite(const BipartiteOperator& rho, const FiniteLuGroup& g);

bool is_group_invariant(const BipartiteOperator& rho, const FiniteLuGroup& g);

// Twirling-based triple check: invariance of rho1 / rho2 under the supplied
// groups, then a scan of the group intersection for an element mapping sigma3
// to rho3. The negative branch is Undecided unless the caller certifies the
// groups exhaust the joint commutant.
EquivalenceVerdict slu_triple_check(const BipartiteOperator& rho1, const BipartiteOperator& rho2,
                                    const BipartiteOperator& rho3, const BipartiteOperator& sigma3,
                                    const FiniteLuGroup& g1, const FiniteLuGroup& g2,
                                    bool groups_exhaust_commutant = false);

}  // namespace luequiv

#endif
