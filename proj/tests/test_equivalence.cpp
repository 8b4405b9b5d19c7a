#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "luequiv/equivalence.hpp"
#include "luequiv/fixtures.hpp"
#include "luequiv/rng.hpp"

using namespace luequiv;

namespace {

ComplexMatrix pauli(int k) {
    ComplexMatrix m(2, 2);
    switch (k) {
        case 0: return ComplexMatrix::identity(2);
        case 1: m(0, 1) = 1.0; m(1, 0) = 1.0; break;
        case 2: m(0, 1) = cplx(0.0, -1.0); m(1, 0) = cplx(0.0, 1.0); break;
        default: m(0, 0) = 1.0; m(1, 1) = -1.0; break;
    }
    return m;
}

FiniteLuGroup local_pauli_group() {
    FiniteLuGroup g;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) g.elements.push_back(LocalUnitary(pauli(i), pauli(j)));
    return g;
}

double conj_residual(const BipartiteOperator& target, const BipartiteOperator& source,
                     const LocalUnitary& lu) {
    return (conjugate_lu(source, lu).mat - target.mat).frobenius_norm();
}

}  // namespace

TEST_CASE("lu_invariants of the reference state") {
    LuInvariants inv = lu_invariants(fixtures::get("paper.rho1"));
    REQUIRE(inv.eigenvalues.size() == 3);
    CHECK(inv.eigenvalues[0] == doctest::Approx(0.6).epsilon(1e-10));
    CHECK(inv.multiplicities == std::vector<std::size_t>{1, 1, 2});
    // top eigenprojector is the Bell line: Schmidt coefficients (s, s)
    REQUIRE(inv.schmidt[0].has_value());
    const double s = 1.0 / std::sqrt(2.0);
    CHECK((*inv.schmidt[0])[0] == doctest::Approx(s).epsilon(1e-10));
    CHECK((*inv.schmidt[0])[1] == doctest::Approx(s).epsilon(1e-10));
}

TEST_CASE("decide_lu: spectrum mismatch is certified") {
    EquivalenceVerdict v =
        decide_lu(fixtures::get("paper.rho1"), fixtures::get("paper.rho3prime"));
    CHECK(v.kind == VerdictKind::Inequivalent);
    REQUIRE(v.certificate.has_value());
    CHECK(v.certificate->kind == CertificateKind::SpectrumMismatch);
}

TEST_CASE("decide_lu: same spectrum, different Schmidt structure") {
    EquivalenceVerdict v =
        decide_lu(fixtures::get("paper.crlu.rho"), fixtures::get("paper.crlu.sigma"));
    CHECK(v.kind == VerdictKind::Inequivalent);
    REQUIRE(v.certificate.has_value());
    const bool expected_kind =
        v.certificate->kind == CertificateKind::SchmidtMismatch ||
        v.certificate->kind == CertificateKind::LocalSpectrumMismatch;
    CHECK(expected_kind);
    // the obstruction sits at the 1/2-eigenprojector, the first in descending order
    CHECK(v.certificate->index == 0);
}

TEST_CASE("decide_lu: planted instances are recovered and verified") {
    Rng rng(101);
    for (int t = 0; t < 4; ++t) {
        const std::size_t m = 2, n = t % 2 ? 3 : 2;
        BipartiteOperator h = rng.state(m, n);
        LocalUnitary planted = rng.local_unitary(m, n);
        BipartiteOperator k = conjugate_lu(h, planted);
        // note the direction: decide searches for the map from k back onto h
        EquivalenceVerdict v = decide_lu(h, k);
        REQUIRE(v.kind == VerdictKind::Equivalent);
        CHECK(v.residual < 1e-7);
        // independent certificate replay
        CHECK(conj_residual(h, k, v.lu) < 1e-3 * (1.0 + h.mat.frobenius_norm()));
    }
}

TEST_CASE("decide_slu validates tuple orthogonality") {
    ComplexMatrix p = ComplexMatrix::diagonal({1.0, 0.0, 0.0, 0.0});
    ComplexMatrix q = ComplexMatrix::diagonal({1.0, 1.0, 0.0, 0.0});
    std::vector<BipartiteOperator> bad{BipartiteOperator(2, 2, p), BipartiteOperator(2, 2, q)};
    CHECK_THROWS_AS(decide_slu(bad, bad), std::invalid_argument);
}

TEST_CASE("projector tuples: pairwise equivalent, triple obstructed") {
    auto P1 = fixtures::get("paper.cex.P1"), P2 = fixtures::get("paper.cex.P2"),
         P3 = fixtures::get("paper.cex.P3");
    auto Q1 = fixtures::get("paper.cex.Q1"), Q2 = fixtures::get("paper.cex.Q2"),
         Q3 = fixtures::get("paper.cex.Q3");

    EquivalenceVerdict v12 = decide_slu({P1, P2}, {Q1, Q2});
    EquivalenceVerdict v13 = decide_slu({P1, P3}, {Q1, Q3});
    EquivalenceVerdict v23 = decide_slu({P2, P3}, {Q2, Q3});
    for (const auto* v : {&v12, &v13, &v23}) {
        CHECK(v->kind == VerdictKind::Equivalent);
        CHECK(v->residual < 1e-8);
    }

    EquivalenceVerdict triple = decide_slu({P1, P2, P3}, {Q1, Q2, Q3});
    CHECK(triple.kind == VerdictKind::Inequivalent);
    REQUIRE(triple.certificate.has_value());
    CHECK(triple.certificate->kind == CertificateKind::CommutantObstruction);
    CHECK(triple.certificate->index == 2);
}

TEST_CASE("planted block unitaries for the projector pairs verify directly") {
    auto P1 = fixtures::get("paper.cex.P1"), P3 = fixtures::get("paper.cex.P3");
    auto Q1 = fixtures::get("paper.cex.Q1"), Q3 = fixtures::get("paper.cex.Q3");
    auto P2 = fixtures::get("paper.cex.P2");
    auto Q2 = fixtures::get("paper.cex.Q2");

    // X (+) X on the second factor handles (Q1,Q3) -> (P1,P3)
    ComplexMatrix xx(4, 4);
    xx(0, 1) = xx(1, 0) = xx(2, 3) = xx(3, 2) = 1.0;
    LocalUnitary lu1(ComplexMatrix::identity(4), xx);
    CHECK(conj_residual(P1, Q1, lu1) < 1e-12);
    CHECK(conj_residual(P3, Q3, lu1) < 1e-12);

    // the two-block swap handles (Q2,Q3) -> (P2,P3)
    ComplexMatrix sw(4, 4);
    sw(0, 2) = sw(1, 3) = sw(2, 0) = sw(3, 1) = 1.0;
    LocalUnitary lu2(ComplexMatrix::identity(4), sw);
    CHECK(conj_residual(P2, Q2, lu2) < 1e-12);
    CHECK(conj_residual(P3, Q3, lu2) < 1e-12);
}

TEST_CASE("decide_slu: planted random tuple") {
    Rng rng(55);
    // two orthogonal rank-one projectors plus their joint complement
    BipartiteOperator h = rng.state(2, 2);
    SpectralDecomposition sd = spectral_decompose(h);
    std::vector<BipartiteOperator> ps = sd.projectors;
    LocalUnitary planted = rng.local_unitary(2, 2);
    std::vector<BipartiteOperator> qs;
    LocalUnitary inv(planted.u.adjoint(), planted.v.adjoint());
    for (const auto& p : ps) qs.push_back(conjugate_lu(p, inv));
    EquivalenceVerdict v = decide_slu(ps, qs);
    REQUIRE(v.kind == VerdictKind::Equivalent);
    CHECK(v.residual < 1e-7);
}

TEST_CASE("gauge_fix verifies the witness on the fixed set") {
    auto P1 = fixtures::get("paper.cex.P1"), P3 = fixtures::get("paper.cex.P3");
    auto Q1 = fixtures::get("paper.cex.Q1"), Q3 = fixtures::get("paper.cex.Q3");
    ComplexMatrix xx(4, 4);
    xx(0, 1) = xx(1, 0) = xx(2, 3) = xx(3, 2) = 1.0;
    LocalUnitary lu(ComplexMatrix::identity(4), xx);

    std::vector<BipartiteOperator> fixed_ok =
        gauge_fix({P1, P3}, {Q1, Q3}, lu, {0, 1});
    CHECK((fixed_ok[0].mat - P1.mat).max_abs() < 1e-12);
    CHECK((fixed_ok[1].mat - P3.mat).max_abs() < 1e-12);

    // identity does not map Q3 onto P3, so fixing index 1 must fail
    CHECK_THROWS_AS(gauge_fix({P1, P3}, {Q1, Q3}, LocalUnitary::identity(4, 4), {1}),
                    std::invalid_argument);
}

TEST_CASE("commutant_blocks and refine_partition") {
    BlockPartition p1 = commutant_blocks(ComplexMatrix::diagonal({1.0, 1.0, 0.0, 0.0}));
    REQUIRE(p1.blocks.size() == 2);
    CHECK(p1.blocks[0] == std::vector<std::size_t>{0, 1});
    CHECK(p1.blocks[1] == std::vector<std::size_t>{2, 3});

    BlockPartition p2 = commutant_blocks(ComplexMatrix::diagonal({1.0, 0.0, 1.0, 0.0}));
    BlockPartition meet = refine_partition({p1, p2});
    REQUIRE(meet.blocks.size() == 4);  // all singletons
    for (std::size_t i = 0; i < 4; ++i) CHECK(meet.blocks[i] == std::vector<std::size_t>{i});
}

TEST_CASE("diagonal_slu_decide replays the triple obstruction") {
    // with both constraints fixed, the commutant is diagonal, so the source
    // diagonal cannot move
    DiagonalReachability r = diagonal_slu_decide({{1, 1, 0, 0}, {1, 0, 1, 0}},
                                                 {0, 1, 1, 0}, {1, 0, 0, 1});
    CHECK(!r.reachable);
    CHECK(r.blocking_block >= 0);

    // with only the first constraint, swapping within {0,1} and {2,3} works
    DiagonalReachability ok = diagonal_slu_decide({{1, 1, 0, 0}},
                                                  {0, 1, 1, 0}, {1, 0, 0, 1});
    CHECK(ok.reachable);
    REQUIRE(ok.permutation.size() == 4);
    // the permutation witnesses the rearrangement
    std::vector<double> moved(4, 0.0);
    const std::vector<double> source{0, 1, 1, 0};
    for (std::size_t i = 0; i < 4; ++i) moved[ok.permutation[i]] = source[i];
    CHECK(moved == std::vector<double>{1, 0, 0, 1});
}

TEST_CASE("lu_equal_up_to_phase allows independent factor phases") {
    Rng rng(77);
    LocalUnitary x = rng.local_unitary(2, 2);
    LocalUnitary y = x;
    y.u *= std::polar(1.0, 0.9);
    y.v *= std::polar(1.0, -2.1);
    CHECK(lu_equal_up_to_phase(x, y));
    LocalUnitary z = rng.local_unitary(2, 2);
    CHECK(!lu_equal_up_to_phase(x, z));
}

TEST_CASE("the local Pauli group is closed and twirls to the identity") {
    FiniteLuGroup g = local_pauli_group();
    CHECK(g.verify_closed());

    Rng rng(88);
    BipartiteOperator rho = rng.state(2, 2);
    BipartiteOperator t = twirl_finite(rho, g);
    ComplexMatrix expect = ComplexMatrix::identity(4);
    expect *= cplx(0.25 * std::real(rho.mat.trace()));
    CHECK((t.mat - expect).max_abs() < 1e-12);
    CHECK(is_group_invariant(t, g));
    CHECK(!is_group_invariant(rho, g));
}

TEST_CASE("twirl_finite rejects non-closed element sets") {
    FiniteLuGroup g;
    g.elements.push_back(LocalUnitary::identity(2, 2));
    g.elements.push_back(LocalUnitary(pauli(1), pauli(0)));
    g.elements.push_back(LocalUnitary(pauli(3), pauli(0)));  // XZ missing
    Rng rng(5);
    CHECK_THROWS_AS(twirl_finite(rng.state(2, 2), g), std::invalid_argument);
}

TEST_CASE("slu_triple_check: positive, undecided, and exhausted branches") {
    FiniteLuGroup pauli_g = local_pauli_group();
    FiniteLuGroup small;
    small.elements.push_back(LocalUnitary::identity(2, 2));
    small.elements.push_back(LocalUnitary(pauli(1), pauli(1)));
    REQUIRE(small.verify_closed());

    ComplexMatrix quarter = ComplexMatrix::identity(4);
    quarter *= cplx(0.25);
    BipartiteOperator max_mixed(2, 2, std::move(quarter));

    BipartiteOperator rho3(2, 2, ComplexMatrix::outer(fixtures::phi_plus(),
                                                      fixtures::phi_plus()));
    BipartiteOperator sigma3 = conjugate_lu(rho3, LocalUnitary(pauli(1), pauli(1)));

    EquivalenceVerdict yes =
        slu_triple_check(max_mixed, max_mixed, rho3, sigma3, pauli_g, small);
    CHECK(yes.kind == VerdictKind::Equivalent);

    // an unreachable target: psi_minus is Pauli-covariant but not reachable here
    BipartiteOperator far(2, 2, ComplexMatrix::outer(fixtures::psi_minus(),
                                                     fixtures::psi_minus()));
    EquivalenceVerdict open_v =
        slu_triple_check(max_mixed, max_mixed, far, rho3, pauli_g, small, false);
    CHECK(open_v.kind == VerdictKind::Undecided);
    EquivalenceVerdict closed_v =
        slu_triple_check(max_mixed, max_mixed, far, rho3, pauli_g, small, true);
    CHECK(closed_v.kind == VerdictKind::Inequivalent);
    REQUIRE(closed_v.certificate.has_value());
    CHECK(closed_v.certificate->kind == CertificateKind::CommutantObstruction);

    // invariance preconditions are named
    Rng rng(21);
    BipartiteOperator generic = rng.state(2, 2);
    CHECK_THROWS_WITH_AS(
        slu_triple_check(generic, max_mixed, rho3, sigma3, pauli_g, small),
        doctest::Contains("rho1"), std::invalid_argument);
}
