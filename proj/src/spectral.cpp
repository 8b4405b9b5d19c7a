#include "luequiv/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace luequiv {

SpectralDecomposition spectral_decompose(const BipartiteOperator& h, double group_tol) {
    EigResult e = hermitian_eig(h.mat);
    const std::size_t d = h.dim();
    double radius = 0.0;
    for (double v : e.values) radius = std::max(radius, std::abs(v));
    const double gap = group_tol * (1.0 + radius);

    SpectralDecomposition out;
    // single-linkage clustering on the ascending list, emitted in descending order
    std::size_t i = 0;
    std::vector<std::pair<std::size_t, std::size_t>> clusters;  // [begin, end)
    while (i < d) {
        std::size_t j = i + 1;
        while (j < d && e.values[j] - e.values[j - 1] <= gap) ++j;
        clusters.emplace_back(i, j);
        i = j;
    }
    std::reverse(clusters.begin(), clusters.end());

    for (auto [b, en] : clusters) {
        double mean = 0.0;
        ComplexMatrix p(d, d);
        for (std::size_t k = b; k < en; ++k) {
            mean += e.values[k];
            const CVec v = e.vectors.column(k);
            p += ComplexMatrix::outer(v, v);
        }
        mean /= static_cast<double>(en - b);
        out.eigenvalues.push_back(mean);
        BipartiteOperator proj;
        proj.dim_a = h.dim_a;
        proj.dim_b = h.dim_b;
        proj.mat = std::move(p);
        out.projectors.push_back(std::move(proj));
        out.multiplicities.push_back(en - b);
    }
    return out;
}

SpectraMatchReport spectra_match(const BipartiteOperator& h, const BipartiteOperator& k,
                                 double tol) {
    if (h.dim_a != k.dim_a || h.dim_b != k.dim_b)
        throw std::invalid_argument("spectra_match: dimension mismatch");
    SpectralDecomposition dh = spectral_decompose(h);
    SpectralDecomposition dk = spectral_decompose(k);
    SpectraMatchReport rep;
    const std::size_t n = std::min(dh.eigenvalues.size(), dk.eigenvalues.size());
    for (std::size_t j = 0; j < n; ++j) {
        if (std::abs(dh.eigenvalues[j] - dk.eigenvalues[j]) > tol) {
            rep.first_mismatch = static_cast<int>(j);
            rep.reason = "eigenvalue";
            return rep;
        }
        if (dh.multiplicities[j] != dk.multiplicities[j]) {
            rep.first_mismatch = static_cast<int>(j);
            rep.reason = "multiplicity";
            return rep;
        }
    }
    if (dh.eigenvalues.size() != dk.eigenvalues.size()) {
        rep.first_mismatch = static_cast<int>(n);
        rep.reason = "distinct eigenvalue count";
        return rep;
    }
    rep.match = true;
    return rep;
}

std::vector<double> pure_pt_spectrum(const SchmidtForm& s, std::size_t dim_a, std::size_t dim_b) {
    std::vector<double> out;
    const auto& c = s.coefficients;
    for (double ci : c) out.push_back(ci * ci);
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = i + 1; j < c.size(); ++j) {
            out.push_back(c[i] * c[j]);
            out.push_back(-c[i] * c[j]);
        }
    while (out.size() < dim_a * dim_b) out.push_back(0.0);
    return out;
}

SchmidtForm schmidt_decompose(const CVec& psi, std::size_t m, std::size_t n) {
    if (psi.size() != m * n) throw std::invalid_argument("schmidt_decompose: size mismatch");
    const double nrm = norm(psi);
    if (nrm < 1e-14) throw std::invalid_argument("schmidt_decompose: zero vector");

    // coefficient matrix C[i][j] = <ij|psi>; Schmidt basis from eig of C C^dag
    ComplexMatrix c(m, n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) c(i, j) = psi[i * n + j];
    ComplexMatrix gram = c * c.adjoint();
    EigResult e = hermitian_eig(gram);

    SchmidtForm s;
    for (std::size_t k = m; k-- > 0;) {  // descending
        const double lam2 = std::max(e.values[k], 0.0);
        const double lam = std::sqrt(lam2);
        if (lam <= 1e-10 * nrm) continue;
        CVec a = e.vectors.column(k);
        // b_k = C^T conj(a_k) / lam
        CVec b(n, 0.0);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < m; ++i) b[j] += c(i, j) * std::conj(a[i]);
        for (auto& z : b) z /= lam;
        s.coefficients.push_back(lam);
        s.basis_a.push_back(std::move(a));
        s.basis_b.push_back(std::move(b));
    }
    return s;
}

}  // namespace luequiv
