#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "luequiv/fixtures.hpp"
#include "luequiv/rng.hpp"
#include "luequiv/witness.hpp"

using namespace luequiv;

namespace {

BipartiteOperator swap_op() {
    ComplexMatrix s(4, 4);
    s(0, 0) = 1.0;
    s(3, 3) = 1.0;
    s(1, 2) = 1.0;
    s(2, 1) = 1.0;
    return BipartiteOperator(2, 2, std::move(s));
}

}  // namespace

TEST_CASE("the swap operator is a verified witness") {
    // <a,b|S|a,b> = |<a|b>|^2 >= 0 with minimum 0, yet S has eigenvalue -1
    WitnessCandidate w = verify_witness(swap_op());
    CHECK(w.status == WitnessStatus::VerifiedEW);
    CHECK(w.min_eigenvalue == doctest::Approx(-1.0).epsilon(1e-10));
    CHECK(std::abs(w.min_product_value) < 1e-7);
}

TEST_CASE("PSD operators and indefinite non-witnesses are labeled correctly") {
    Rng rng(3);
    WitnessCandidate psd = verify_witness(rng.state(2, 2));
    CHECK(psd.status == WitnessStatus::PositiveSemidefinite);

    ComplexMatrix neg = ComplexMatrix::identity(4);
    neg *= cplx(-1.0);
    WitnessCandidate bad = verify_witness(BipartiteOperator(2, 2, std::move(neg)));
    CHECK(bad.status == WitnessStatus::NotBlockPositive);
    REQUIRE(bad.violation.has_value());
    CHECK(product_expectation(bad.op, *bad.violation) < -1e-9);
}

TEST_CASE("witness_from_state_top on a state with an entangled top eigenline") {
    BipartiteOperator rho1 = fixtures::get("paper.rho1");
    Rng rng(9);
    BipartiteOperator rho2 = conjugate_lu(rho1, rng.local_unitary(2, 2));
    TopWitnessResult r = witness_from_state_top(rho1, rho2);
    CHECK(r.mu < 0.6);  // strictly below the top eigenvalue
    CHECK(r.w1.status == WitnessStatus::VerifiedEW);
    CHECK(r.w2.status == WitnessStatus::VerifiedEW);
    // both witnesses detect their source state: tr(W rho) = mu - tr(rho^2) < 0
    // spot check via the minimum eigenvector expectation instead
    CHECK(r.w1.min_eigenvalue < -1e-3);
}

TEST_CASE("witness_from_state_top fails gracefully for product-top states") {
    // top eigenline |00> admits a product vector, so mu reaches the top eigenvalue
    ComplexMatrix m = ComplexMatrix::diagonal({0.7, 0.1, 0.1, 0.1});
    BipartiteOperator rho(2, 2, std::move(m));
    TopWitnessResult r = witness_from_state_top(rho, rho);
    CHECK(r.w1.status == WitnessStatus::PositiveSemidefinite);
}

TEST_CASE("witness_from_state_top requires matching top eigenvalues") {
    ComplexMatrix a = ComplexMatrix::diagonal({0.7, 0.1, 0.1, 0.1});
    ComplexMatrix b = ComplexMatrix::diagonal({0.6, 0.2, 0.1, 0.1});
    CHECK_THROWS_AS(witness_from_state_top(BipartiteOperator(2, 2, a),
                                           BipartiteOperator(2, 2, b)),
                    std::invalid_argument);
}

TEST_CASE("witness_from_eigenspace on a full-rank state") {
    BipartiteOperator rho1 = fixtures::get("paper.rho1");  // spectrum 0.6,0.2,0.1,0.1
    EigenspaceWitnessResult r = witness_from_eigenspace(rho1, 0);
    CHECK(r.p_max == doctest::Approx(0.5).epsilon(1e-6));  // Bell top eigenline
    CHECK(r.p_min > 0.0);
    CHECK(r.mu == doctest::Approx(0.99 * r.p_min / r.p_max).epsilon(1e-12));
    CHECK(r.w.status == WitnessStatus::VerifiedEW);
}

TEST_CASE("witness_from_eigenspace rejects rank-deficient states and bad indices") {
    ComplexMatrix m = ComplexMatrix::diagonal({0.5, 0.5, 0.0, 0.0});
    CHECK_THROWS_AS(witness_from_eigenspace(BipartiteOperator(2, 2, m), 0),
                    std::invalid_argument);
    CHECK_THROWS_AS(witness_from_eigenspace(fixtures::get("paper.rho1"), 7),
                    std::invalid_argument);
}

TEST_CASE("state_from_witness shift law") {
    BipartiteOperator w = swap_op();
    BipartiteOperator rho = state_from_witness(w);  // auto shift = 1 + 1 = 2
    EigResult e = hermitian_eig(rho.mat);
    CHECK(e.values.front() >= -1e-12);
    CHECK(std::abs(rho.mat(0, 0) - w.mat(0, 0) - 2.0) < 1e-12);

    // explicit valid and invalid shifts
    BipartiteOperator ok = state_from_witness(w, 1.5);
    CHECK(hermitian_eig(ok.mat).values.front() >= -1e-12);
    CHECK_THROWS_AS(state_from_witness(w, 0.5), std::invalid_argument);
}

TEST_CASE("ppt_guarantee_x makes the shifted operator and its partial transpose PSD") {
    Rng rng(13);
    ComplexMatrix h = rng.hermitian(4);
    BipartiteOperator w(2, 2, std::move(h));
    const double x = ppt_guarantee_x(w);
    BipartiteOperator shifted = shift(w, x);
    CHECK(hermitian_eig(shifted.mat).values.front() >= -1e-10);
    CHECK(hermitian_eig(partial_transpose(shifted).mat).values.front() >= -1e-10);
}

TEST_CASE("positive_relabel keeps projectors and swaps the spectrum") {
    BipartiteOperator rho1 = fixtures::get("paper.rho1");
    BipartiteOperator out = positive_relabel(rho1, {3.0, 2.0, 1.0});
    EigResult e = hermitian_eig(out.mat);
    CHECK(e.values.back() == doctest::Approx(3.0).epsilon(1e-10));
    CHECK(e.values.front() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK_THROWS_AS(positive_relabel(rho1, {1.0, 2.0, 3.0}), std::invalid_argument);
    CHECK_THROWS_AS(positive_relabel(rho1, {3.0, -2.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(positive_relabel(rho1, {3.0, 2.0}), std::invalid_argument);
}

TEST_CASE("upb_state builds the tiles state with the expected structure") {
    BipartiteOperator sigma = upb_state(fixtures::tiles_upb());
    CHECK(std::abs(std::real(sigma.mat.trace()) - 1.0) < 1e-12);
    EigResult e = hermitian_eig(sigma.mat);
    CHECK(e.values.front() >= -1e-12);
    // rank 4 with flat spectrum 1/4
    CHECK(e.values.back() == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(e.values[5] == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(std::abs(e.values[4]) < 1e-12);
    // PPT
    CHECK(hermitian_eig(partial_transpose(sigma).mat).values.front() > -1e-9);
}

TEST_CASE("upb_state rejects non-orthogonal members") {
    UpbSpec bad;
    bad.dim_a = bad.dim_b = 2;
    bad.members = {{CVec{1.0, 0.0}, CVec{1.0, 0.0}},
                   {CVec{1.0, 0.0}, CVec{0.6, 0.8}}};
    CHECK_THROWS_AS(upb_state(bad), std::invalid_argument);
}
