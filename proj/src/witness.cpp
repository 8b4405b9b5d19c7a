#include "luequiv/witness.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace luequiv {

const char* to_string(WitnessStatus s) {
    switch (s) {
        case WitnessStatus::VerifiedEW: return "VerifiedEW";
        case WitnessStatus::NotBlockPositive: return "NotBlockPositive";
        case WitnessStatus::PositiveSemidefinite: return "PositiveSemidefinite";
        case WitnessStatus::Unverified: return "Unverified";
    }
    return "?";
}

WitnessCandidate verify_witness(const BipartiteOperator& w, const SeesawOptions& opts) {
    WitnessCandidate c;
    c.op = w;
    EigResult e = hermitian_eig(w.mat);
    c.min_eigenvalue = e.values.front();

    // Seesaw runs on the PSD-shifted operator; reported value is unshifted.
    const double shift_c = std::max(0.0, -c.min_eigenvalue) + 1.0;
    ProductOptimum mn = min_product_overlap(shift(w, shift_c), opts);
    c.min_product_value = mn.value - shift_c;

    if (c.min_product_value < -1e-9) {
        c.status = WitnessStatus::NotBlockPositive;
        c.violation = mn.arg;
    } else if (c.min_eigenvalue < -1e-9) {
        c.status = WitnessStatus::VerifiedEW;
    } else {
        c.status = WitnessStatus::PositiveSemidefinite;
    }
    return c;
}

TopWitnessResult witness_from_state_top(const BipartiteOperator& rho1,
                                        const BipartiteOperator& rho2,
                                        const SeesawOptions& opts) {
    if (rho1.dim_a != rho2.dim_a || rho1.dim_b != rho2.dim_b)
        throw std::invalid_argument("witness_from_state_top: dimension mismatch");
    EigResult e1 = hermitian_eig(rho1.mat);
    EigResult e2 = hermitian_eig(rho2.mat);
    const double lam1 = e1.values.back();
    if (std::abs(lam1 - e2.values.back()) > 1e-8)
        throw std::invalid_argument("witness_from_state_top: top eigenvalues differ");

    TopWitnessResult out;
    const double mu1 = max_product_overlap(rho1, opts).value;
    const double mu2 = max_product_overlap(rho2, opts).value;
    out.mu = std::max(mu1, mu2);

    const std::size_t d = rho1.dim();
    BipartiteOperator w1 = rho1, w2 = rho2;
    w1.mat *= cplx(-1.0);
    w2.mat *= cplx(-1.0);
    for (std::size_t i = 0; i < d; ++i) {
        w1.mat(i, i) += out.mu;
        w2.mat(i, i) += out.mu;
    }
    if (out.mu >= lam1 - 1e-9) {
        // some top eigenspace admits a product vector; the construction fails
        out.w1.op = std::move(w1);
        out.w2.op = std::move(w2);
        out.w1.status = out.w2.status = WitnessStatus::PositiveSemidefinite;
        return out;
    }
    out.w1 = verify_witness(w1, opts);
    out.w2 = verify_witness(w2, opts);
    return out;
}

EigenspaceWitnessResult witness_from_eigenspace(const BipartiteOperator& rho, std::size_t j,
                                                const SeesawOptions& opts) {
    EigResult e = hermitian_eig(rho.mat);
    if (e.values.front() < default_tolerances().rank)
        throw std::invalid_argument("witness_from_eigenspace: state must have full rank");
    SpectralDecomposition sd = spectral_decompose(rho);
    if (j >= sd.projectors.size())
        throw std::invalid_argument("witness_from_eigenspace: eigenvalue index out of range");
    if (sd.projectors.size() < 2)
        throw std::invalid_argument(
            "witness_from_eigenspace: construction needs at least two distinct eigenvalues");

    BipartiteOperator rest = rho;
    rest.mat = ComplexMatrix(rho.dim(), rho.dim());
    for (std::size_t i = 0; i < sd.projectors.size(); ++i) {
        if (i == j) continue;
        ComplexMatrix t = sd.projectors[i].mat;
        t *= cplx(sd.eigenvalues[i]);
        rest.mat += t;
    }

    EigenspaceWitnessResult out;
    out.p_max = max_product_overlap(sd.projectors[j], opts).value;
    out.p_min = min_product_overlap(rest, opts).value;
    if (out.p_max <= 1e-9) {
        out.mu = 1.0;  // any mu > 0 is valid when the eigenspace avoids products
    } else {
        if (out.p_min <= 1e-9)
            throw std::invalid_argument(
                "witness_from_eigenspace: eigenspace admits a product vector and the "
                "complement reaches zero; construction inapplicable");
        out.mu = 0.99 * out.p_min / out.p_max;
    }

    BipartiteOperator w = rest;
    ComplexMatrix neg = sd.projectors[j].mat;
    neg *= cplx(-out.mu);
    w.mat += neg;
    out.w = verify_witness(w, opts);
    return out;
}

BipartiteOperator state_from_witness(const BipartiteOperator& w, std::optional<double> x) {
    EigResult e = hermitian_eig(w.mat);
    const double lam_min = e.values.front();
    double c;
    if (x.has_value()) {
        c = *x;
        if (c < -lam_min - 1e-12)
            throw std::invalid_argument("state_from_witness: shift too small for positivity");
    } else {
        c = std::max(0.0, -lam_min) + 1.0;
    }
    return shift(w, c);
}

double ppt_guarantee_x(const BipartiteOperator& w) {
    EigResult e = hermitian_eig(w.mat);
    EigResult ept = hermitian_eig(partial_transpose(w).mat);
    const double lam = std::min(e.values.front(), ept.values.front());
    return std::max(0.0, -lam) + 1.0;
}

BipartiteOperator positive_relabel(const BipartiteOperator& h,
                                   const std::vector<double>& new_eigenvalues) {
    SpectralDecomposition sd = spectral_decompose(h);
    if (new_eigenvalues.size() != sd.projectors.size())
        throw std::invalid_argument("positive_relabel: eigenvalue count mismatch");
    for (std::size_t i = 0; i < new_eigenvalues.size(); ++i) {
        if (new_eigenvalues[i] <= 0.0)
            throw std::invalid_argument("positive_relabel: eigenvalues must be positive");
        if (i > 0 && new_eigenvalues[i] >= new_eigenvalues[i - 1])
            throw std::invalid_argument("positive_relabel: eigenvalues must be strictly descending");
    }
    BipartiteOperator out = h;
    out.mat = ComplexMatrix(h.dim(), h.dim());
    for (std::size_t i = 0; i < sd.projectors.size(); ++i) {
        ComplexMatrix t = sd.projectors[i].mat;
        t *= cplx(new_eigenvalues[i]);
        out.mat += t;
    }
    return out;
}

BipartiteOperator upb_state(const UpbSpec& upb) {
    const std::size_t d = upb.dim_a * upb.dim_b;
    const std::size_t l = upb.members.size();
    if (l >= d) throw std::invalid_argument("upb_state: need fewer members than mn");
    std::vector<CVec> fulls;
    for (const auto& pv : upb.members) fulls.push_back(pv.full());
    for (std::size_t i = 0; i < l; ++i)
        for (std::size_t j = i + 1; j < l; ++j)
            if (std::abs(inner(fulls[i], fulls[j])) > 1e-10)
                throw std::invalid_argument("upb_state: members are not orthogonal");

    ComplexMatrix m = ComplexMatrix::identity(d);
    for (const auto& x : fulls) m -= ComplexMatrix::outer(x, x);
    m *= cplx(1.0 / static_cast<double>(d - l));
    return BipartiteOperator(upb.dim_a, upb.dim_b, std::move(m));
}

}  // namespace luequiv
