#include "luequiv/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace luequiv {

BipartiteOperator::BipartiteOperator(std::size_t m, std::size_t n, ComplexMatrix mtx,
                                     const Tolerances& tol)
    : dim_a(m), dim_b(n), mat(std::move(mtx)) {
    if (mat.rows() != m * n || mat.cols() != m * n)
        throw std::invalid_argument("BipartiteOperator: matrix size must be mn x mn");
    if (!mat.is_hermitian(tol.hermiticity))
        throw std::invalid_argument("BipartiteOperator: matrix is not Hermitian");
}

LocalUnitary::LocalUnitary(ComplexMatrix uu, ComplexMatrix vv, const Tolerances& tol)
    : u(std::move(uu)), v(std::move(vv)) {
    if (!u.is_unitary(tol.orthonormality) || !v.is_unitary(tol.orthonormality))
        throw std::invalid_argument("LocalUnitary: factors must be unitary");
}

LocalUnitary LocalUnitary::identity(std::size_t m, std::size_t n) {
    LocalUnitary lu;
    lu.u = ComplexMatrix::identity(m);
    lu.v = ComplexMatrix::identity(n);
    return lu;
}

ComplexMatrix LocalUnitary::full() const { return kron(u, v); }

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix c(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const cplx aij = a(i, j);
            if (aij == cplx(0.0)) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    c(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    return c;
}

BipartiteOperator partial_transpose(const BipartiteOperator& x) {
    const std::size_t m = x.dim_a, n = x.dim_b;
    ComplexMatrix r(m * n, m * n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < m; ++k)
                for (std::size_t l = 0; l < n; ++l)
                    r(i * n + j, k * n + l) = x.mat(i * n + l, k * n + j);
    BipartiteOperator out;
    out.dim_a = m;
    out.dim_b = n;
    out.mat = std::move(r);
    return out;
}

ComplexMatrix partial_trace(const BipartiteOperator& x, Factor which) {
    const std::size_t m = x.dim_a, n = x.dim_b;
    if (which == Factor::A) {
        ComplexMatrix r(n, n);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t l = 0; l < n; ++l)
                for (std::size_t i = 0; i < m; ++i) r(j, l) += x.mat(i * n + j, i * n + l);
        return r;
    }
    ComplexMatrix r(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t k = 0; k < m; ++k)
            for (std::size_t j = 0; j < n; ++j) r(i, k) += x.mat(i * n + j, k * n + j);
    return r;
}

namespace {

double offdiag_mass(const ComplexMatrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

}  // namespace

EigResult hermitian_eig(const ComplexMatrix& h, const Tolerances& tol) {
    if (!h.is_hermitian(1e-10))
        throw std::invalid_argument("hermitian_eig: input is not Hermitian");
    const std::size_t n = h.rows();
    ComplexMatrix a = h;
    ComplexMatrix v = ComplexMatrix::identity(n);
    const double scale = 1.0 + h.frobenius_norm();

    for (int sweep = 0; sweep < 100 && offdiag_mass(a) > tol.jacobi_offdiag * scale; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cplx b = a(p, q);
                const double absb = std::abs(b);
                if (absb <= 1e-300) continue;
                const double app = std::real(a(p, p));
                const double aqq = std::real(a(q, q));
                const double phi = std::arg(b);
                const double tau = (aqq - app) / (2.0 * absb);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(tau * tau + 1.0));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const cplx eip = std::polar(1.0, phi);
                // R: R(p,p)=c, R(p,q)=s e^{i phi}, R(q,p)=-s e^{-i phi}, R(q,q)=c
                // A <- R^dag A R
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * std::conj(eip) * akq;
                    a(k, q) = s * eip * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * eip * aqk;
                    a(q, k) = s * std::conj(eip) * apk + c * aqk;
                }
                a(p, q) = std::conj(a(q, p));  // keep Hermitian symmetry exact
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * std::conj(eip) * vkq;
                    v(k, q) = s * eip * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return std::real(a(i, i)) < std::real(a(j, j)); });

    EigResult res;
    res.values.resize(n);
    res.vectors = ComplexMatrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        res.values[j] = std::real(a(order[j], order[j]));
        res.vectors.set_column(j, v.column(order[j]));
    }
    return res;
}

ComplexMatrix unitary_from_generator(const ComplexMatrix& g, const Tolerances& tol) {
    EigResult e = hermitian_eig(g, tol);
    const std::size_t n = g.rows();
    ComplexMatrix u(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            cplx s = 0.0;
            for (std::size_t k = 0; k < n; ++k)
                s += e.vectors(i, k) * std::polar(1.0, e.values[k]) * std::conj(e.vectors(j, k));
            u(i, j) = s;
        }
    return u;
}

BipartiteOperator conjugate_lu(const BipartiteOperator& x, const LocalUnitary& lu) {
    const ComplexMatrix w = lu.full();
    BipartiteOperator out;
    out.dim_a = x.dim_a;
    out.dim_b = x.dim_b;
    out.mat = w * x.mat * w.adjoint();
    return out;
}

BipartiteOperator shift(const BipartiteOperator& x, double c) {
    BipartiteOperator out = x;
    for (std::size_t i = 0; i < out.mat.rows(); ++i) out.mat(i, i) += c;
    return out;
}

}  // namespace luequiv
