#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "luequiv/linalg.hpp"
#include "luequiv/rng.hpp"

using namespace luequiv;

namespace {

double reconstruction_error(const ComplexMatrix& h, const EigResult& e) {
    double worst = 0.0;
    for (std::size_t j = 0; j < h.rows(); ++j) {
        CVec v = e.vectors.column(j);
        CVec hv = mat_vec(h, v);
        for (std::size_t i = 0; i < v.size(); ++i)
            worst = std::max(worst, std::abs(hv[i] - e.values[j] * v[i]));
    }
    return worst;
}

double power_trace(const ComplexMatrix& h, int p) {
    ComplexMatrix acc = h;
    for (int i = 1; i < p; ++i) acc = acc * h;
    return std::real(acc.trace());
}

}  // namespace

TEST_CASE("kron matches the block definition") {
    ComplexMatrix a(2, 2), b(2, 2);
    a(0, 0) = 1.0;
    a(0, 1) = 2.0;
    a(1, 0) = 3.0;
    a(1, 1) = 4.0;
    b(0, 0) = cplx(0.0, 1.0);
    b(1, 1) = 5.0;
    ComplexMatrix k = kron(a, b);
    REQUIRE(k.rows() == 4);
    CHECK(k(0, 0) == cplx(0.0, 1.0));
    CHECK(k(1, 1) == cplx(5.0, 0.0));
    CHECK(k(0, 2) == cplx(0.0, 2.0));
    CHECK(k(3, 3) == cplx(20.0, 0.0));
    CHECK(k(2, 0) == cplx(0.0, 3.0));
}

TEST_CASE("partial transpose of the symmetric Bell projector is half the swap") {
    const double s = 1.0 / std::sqrt(2.0);
    CVec bell{s, 0.0, 0.0, s};
    BipartiteOperator p(2, 2, ComplexMatrix::outer(bell, bell));
    BipartiteOperator pt = partial_transpose(p);
    // swap/2 has entries 1/2 at (0,0),(3,3),(1,2),(2,1)
    CHECK(std::abs(pt.mat(1, 2) - 0.5) < 1e-15);
    CHECK(std::abs(pt.mat(2, 1) - 0.5) < 1e-15);
    CHECK(std::abs(pt.mat(0, 3)) < 1e-15);
    CHECK(std::abs(pt.mat(3, 0)) < 1e-15);
    // involution
    BipartiteOperator back = partial_transpose(pt);
    CHECK((back.mat - p.mat).max_abs() < 1e-15);
}

TEST_CASE("partial trace splits a Kronecker product") {
    Rng rng(7);
    ComplexMatrix a = rng.hermitian(2);
    ComplexMatrix b = rng.hermitian(3);
    BipartiteOperator x(2, 3, kron(a, b));
    ComplexMatrix ta = partial_trace(x, Factor::B);  // should be tr(b) * a
    ComplexMatrix tb = partial_trace(x, Factor::A);  // should be tr(a) * b
    ComplexMatrix ea = a;
    ea *= b.trace();
    ComplexMatrix eb = b;
    eb *= a.trace();
    CHECK((ta - ea).max_abs() < 1e-12);
    CHECK((tb - eb).max_abs() < 1e-12);
}

TEST_CASE("hermitian_eig on a pinned diagonal") {
    ComplexMatrix d = ComplexMatrix::diagonal({0.4, -0.1, 0.3, 0.4});
    EigResult e = hermitian_eig(d);
    REQUIRE(e.values.size() == 4);
    CHECK(e.values[0] == doctest::Approx(-0.1).epsilon(1e-12));
    CHECK(e.values[1] == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(e.values[2] == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(e.values[3] == doctest::Approx(0.4).epsilon(1e-12));
}

TEST_CASE("hermitian_eig: eigenpairs, orthonormality, power-trace oracle") {
    Rng rng(11);
    for (std::size_t n : {2u, 3u, 5u, 8u, 16u}) {
        ComplexMatrix h = rng.hermitian(n);
        EigResult e = hermitian_eig(h);
        CHECK(reconstruction_error(h, e) < 1e-10);
        CHECK(e.vectors.is_unitary(1e-10));
        for (std::size_t i = 1; i < n; ++i) CHECK(e.values[i - 1] <= e.values[i] + 1e-14);
        // independent spectral oracle: power sums of eigenvalues vs matrix traces
        for (int p : {1, 2, 3}) {
            double sum = 0.0;
            for (double v : e.values) sum += std::pow(v, p);
            CHECK(sum == doctest::Approx(power_trace(h, p)).epsilon(1e-9));
        }
    }
}

TEST_CASE("hermitian_eig pinned 2x2 with complex off-diagonal") {
    // [[0, -i], [i, 0]] has eigenvalues -1, 1
    ComplexMatrix h(2, 2);
    h(0, 1) = cplx(0.0, -1.0);
    h(1, 0) = cplx(0.0, 1.0);
    EigResult e = hermitian_eig(h);
    CHECK(e.values[0] == doctest::Approx(-1.0).epsilon(1e-13));
    CHECK(e.values[1] == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("unitary_from_generator matches the closed form for a Pauli rotation") {
    // exp(i t [[0,-i],[i,0]]) = [[cos t, sin t], [-sin t, cos t]]
    const double t = 0.37;
    ComplexMatrix g(2, 2);
    g(0, 1) = cplx(0.0, -t);
    g(1, 0) = cplx(0.0, t);
    ComplexMatrix u = unitary_from_generator(g);
    CHECK(std::abs(u(0, 0) - std::cos(t)) < 1e-12);
    CHECK(std::abs(u(0, 1) - std::sin(t)) < 1e-12);
    CHECK(std::abs(u(1, 0) + std::sin(t)) < 1e-12);
    CHECK(u.is_unitary(1e-12));
}

TEST_CASE("conjugate_lu preserves the spectrum") {
    Rng rng(3);
    BipartiteOperator x = rng.state(2, 3);
    LocalUnitary lu = rng.local_unitary(2, 3);
    BipartiteOperator y = conjugate_lu(x, lu);
    EigResult ex = hermitian_eig(x.mat);
    EigResult ey = hermitian_eig(y.mat);
    for (std::size_t i = 0; i < 6; ++i)
        CHECK(ex.values[i] == doctest::Approx(ey.values[i]).epsilon(1e-10));
}

TEST_CASE("validation rejects malformed inputs") {
    ComplexMatrix bad(2, 2);
    bad(0, 1) = 1.0;  // not Hermitian
    CHECK_THROWS_AS(BipartiteOperator(1, 2, bad), std::invalid_argument);
    ComplexMatrix not_unitary = ComplexMatrix::identity(2);
    not_unitary(0, 0) = 2.0;
    CHECK_THROWS_AS(LocalUnitary(not_unitary, ComplexMatrix::identity(2)),
                    std::invalid_argument);
    // size mismatch with the dimension tags
    CHECK_THROWS_AS(BipartiteOperator(2, 2, ComplexMatrix::identity(3)),
                    std::invalid_argument);
}

TEST_CASE("shift adds a multiple of the identity") {
    Rng rng(5);
    BipartiteOperator x = rng.state(2, 2);
    BipartiteOperator y = shift(x, 2.5);
    for (std::size_t i = 0; i < 4; ++i)
        CHECK(std::abs(y.mat(i, i) - x.mat(i, i) - 2.5) < 1e-14);
}
