#include "luequiv/fixtures.hpp"

#include <cmath>
#include <stdexcept>

namespace luequiv::fixtures {

namespace {

CVec basis(std::size_t d, std::size_t i) {
    CVec v(d, 0.0);
    v[i] = 1.0;
    return v;
}

ComplexMatrix proj(const CVec& v) { return ComplexMatrix::outer(v, v); }

BipartiteOperator make(std::size_t m, std::size_t n, ComplexMatrix mat) {
    return BipartiteOperator(m, n, std::move(mat));
}

BipartiteOperator rho1() {
    ComplexMatrix mat = proj(basis(4, 1)) + proj(basis(4, 2));
    ComplexMatrix t = proj(phi_plus());
    t *= cplx(2.0);
    mat += t;
    t = proj(phi_minus());
    t *= cplx(6.0);
    mat += t;
    mat *= cplx(0.1);
    return make(2, 2, std::move(mat));
}

BipartiteOperator rho3prime() {
    const double s = 1.0 / std::sqrt(2.0);
    CVec plus{s, s};
    CVec pp = kron_vec(plus, plus);
    ComplexMatrix mat = proj(basis(4, 0)) + proj(basis(4, 3));
    ComplexMatrix t = proj(pp);
    t *= cplx(4.0);
    mat += t;
    mat *= cplx(1.0 / 6.0);
    return make(2, 2, std::move(mat));
}

BipartiteOperator crlu_rho() {
    ComplexMatrix mat(4, 4);
    mat(0, 0) = 0.5;
    mat(1, 1) = 0.25;
    mat(2, 2) = 0.125;
    mat(3, 3) = 0.125;
    return make(2, 2, std::move(mat));
}

BipartiteOperator crlu_sigma() {
    ComplexMatrix mat = proj(phi_plus());
    mat *= cplx(0.5);
    ComplexMatrix t = proj(phi_minus());
    t *= cplx(0.25);
    mat += t;
    t = proj(basis(4, 1)) + proj(basis(4, 2));
    t *= cplx(0.125);
    mat += t;
    return make(2, 2, std::move(mat));
}

// Tuples supported on C^4 (x) C^4; the second factors are 0/1 diagonals.
BipartiteOperator cex(std::size_t level, std::vector<double> diag) {
    ComplexMatrix mat = kron(proj(basis(4, level)), ComplexMatrix::diagonal(diag));
    return make(4, 4, std::move(mat));
}

BipartiteOperator alpha(int sign) {
    const double th = M_PI / 6.0;
    CVec psi{std::cos(th), 0.0, 0.0, std::sin(th)};
    const double s = 1.0 / std::sqrt(2.0);
    CVec bell{0.0, s, sign * s, 0.0};
    ComplexMatrix mat = proj(psi);  // x = 1
    ComplexMatrix t = proj(bell);
    t *= cplx(2.0);  // y = 2
    mat += t;
    return make(2, 2, std::move(mat));
}

}  // namespace

CVec phi_plus() {
    const double s = 1.0 / std::sqrt(2.0);
    return {s, 0.0, 0.0, s};
}

CVec phi_minus() {
    const double s = 1.0 / std::sqrt(2.0);
    return {s, 0.0, 0.0, -s};
}

CVec psi_plus() {
    const double s = 1.0 / std::sqrt(2.0);
    return {0.0, s, s, 0.0};
}

CVec psi_minus() {
    const double s = 1.0 / std::sqrt(2.0);
    return {0.0, s, -s, 0.0};
}

UpbSpec tiles_upb() {
    const double s = 1.0 / std::sqrt(2.0);
    const double t = 1.0 / std::sqrt(3.0);
    auto v2 = [](cplx a, cplx b, cplx c) { return CVec{a, b, c}; };
    UpbSpec u;
    u.dim_a = 3;
    u.dim_b = 3;
    u.members = {
        {v2(1, 0, 0), v2(s, -s, 0)},
        {v2(0, 0, 1), v2(0, s, -s)},
        {v2(s, -s, 0), v2(0, 0, 1)},
        {v2(0, s, -s), v2(1, 0, 0)},
        {v2(t, t, t), v2(t, t, t)},
    };
    return u;
}

BipartiteOperator get(const std::string& name) {
    if (name == "paper.rho1") return rho1();
    if (name == "paper.rho3prime") return rho3prime();
    if (name == "paper.crlu.rho") return crlu_rho();
    if (name == "paper.crlu.sigma") return crlu_sigma();
    if (name == "paper.tiles_upb_state") return upb_state(tiles_upb());
    if (name == "paper.cex.P1" || name == "paper.cex.Q1") return cex(0, {1, 1, 0, 0});
    if (name == "paper.cex.P2" || name == "paper.cex.Q2") return cex(1, {1, 0, 1, 0});
    if (name == "paper.cex.P3") return cex(2, {1, 0, 0, 1});
    if (name == "paper.cex.Q3") return cex(2, {0, 1, 1, 0});
    if (name == "paper.alpha1") return alpha(+1);
    if (name == "paper.alpha2") return alpha(-1);
    throw std::invalid_argument("unknown fixture: " + name);
}

std::vector<std::string> names() {
    return {"paper.rho1",    "paper.rho3prime", "paper.crlu.rho", "paper.crlu.sigma",
            "paper.tiles_upb_state",
            "paper.cex.P1",  "paper.cex.P2",    "paper.cex.P3",   "paper.cex.Q1",
            "paper.cex.Q2",  "paper.cex.Q3",    "paper.alpha1",   "paper.alpha2"};
}

bool has(const std::string& name) {
    for (const auto& n : names())
        if (n == name) return true;
    return false;
}

}  // namespace luequiv::fixtures
