#include "luequiv/product_opt.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

#include "luequiv/rng.hpp"

namespace luequiv {

namespace {

// <., b| H |., b> as an m x m matrix
ComplexMatrix conditioned_a(const BipartiteOperator& h, const CVec& b) {
    const std::size_t m = h.dim_a, n = h.dim_b;
    ComplexMatrix r(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t k = 0; k < m; ++k) {
            cplx s = 0.0;
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t l = 0; l < n; ++l)
                    s += std::conj(b[j]) * h.mat(i * n + j, k * n + l) * b[l];
            r(i, k) = s;
        }
    return r;
}

ComplexMatrix conditioned_b(const BipartiteOperator& h, const CVec& a) {
    const std::size_t m = h.dim_a, n = h.dim_b;
    ComplexMatrix r(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t l = 0; l < n; ++l) {
            cplx s = 0.0;
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t k = 0; k < m; ++k)
                    s += std::conj(a[i]) * h.mat(i * n + j, k * n + l) * a[k];
            r(j, l) = s;
        }
    return r;
}

CVec extremal_eigvec(const ComplexMatrix& h, bool maximal) {
    EigResult e = hermitian_eig(h);
    return e.vectors.column(maximal ? h.rows() - 1 : 0);
}

struct SeesawRun {
    double value;
    ProductVector pv;
};

SeesawRun seesaw_once(const BipartiteOperator& h, ProductVector pv, bool maximize,
                      const SeesawOptions& opts) {
    // enforce exact Hermiticity of the conditioned blocks via symmetrization
    double prev = product_expectation(h, pv);
    for (std::size_t it = 0; it < opts.max_iters; ++it) {
        ComplexMatrix ab = conditioned_a(h, pv.b);
        ab += ab.adjoint();
        ab *= cplx(0.5);
        pv.a = extremal_eigvec(ab, maximize);
        ComplexMatrix ba = conditioned_b(h, pv.a);
        ba += ba.adjoint();
        ba *= cplx(0.5);
        pv.b = extremal_eigvec(ba, maximize);
        const double cur = product_expectation(h, pv);
        // ascent (resp. descent) is monotone up to eigensolver roundoff
        assert(maximize ? cur >= prev - 1e-9 : cur <= prev + 1e-9);
        if (std::abs(cur - prev) < opts.iter_tol) {
            prev = cur;
            break;
        }
        prev = cur;
    }
    return {prev, std::move(pv)};
}

SeesawRun seesaw_many(const BipartiteOperator& h, bool maximize, const SeesawOptions& opts,
                      double* spread_out = nullptr, std::size_t* used_out = nullptr) {
    Rng master(opts.seed);
    SeesawRun best{maximize ? -1e300 : 1e300, {}};
    double worst = maximize ? 1e300 : -1e300;
    for (std::size_t r = 0; r < opts.restarts; ++r) {
        Rng sub = master.substream(r);
        ProductVector start{sub.unit_vector(h.dim_a), sub.unit_vector(h.dim_b)};
        SeesawRun run = seesaw_once(h, std::move(start), maximize, opts);
        if (maximize ? run.value > best.value : run.value < best.value) best = run;
        if (maximize ? run.value < worst : run.value > worst) worst = run.value;
    }
    if (spread_out) *spread_out = std::abs(best.value - worst);
    if (used_out) *used_out = opts.restarts;
    return best;
}

void require_psd(const BipartiteOperator& h) {
    EigResult e = hermitian_eig(h.mat);
    if (e.values.front() < -default_tolerances().psd)
        throw std::invalid_argument("operator is not positive semidefinite");
}

void require_projector(const BipartiteOperator& p, double tol = 1e-8) {
    ComplexMatrix d = p.mat * p.mat - p.mat;
    if (d.frobenius_norm() > tol * (1.0 + p.mat.frobenius_norm()))
        throw std::invalid_argument("operator is not a projector");
}

}  // namespace

double product_expectation(const BipartiteOperator& h, const ProductVector& pv) {
    const CVec x = pv.full();
    const CVec hx = mat_vec(h.mat, x);
    return std::real(inner(x, hx));
}

ProductOptimum max_product_overlap(const BipartiteOperator& h, const SeesawOptions& opts) {
    require_psd(h);
    ProductOptimum out;
    SeesawRun best = seesaw_many(h, true, opts, &out.spread, &out.restarts_used);
    out.value = best.value;
    out.arg = std::move(best.pv);
    return out;
}

ProductOptimum min_product_overlap(const BipartiteOperator& h, const SeesawOptions& opts) {
    require_psd(h);
    ProductOptimum out;
    SeesawRun best = seesaw_many(h, false, opts, &out.spread, &out.restarts_used);
    out.value = best.value;
    out.arg = std::move(best.pv);
    return out;
}

ProductSearchVerdict contains_product_vector(const BipartiteOperator& p,
                                             const SeesawOptions& opts, double tol) {
    require_projector(p);
    SeesawRun best = seesaw_many(p, true, opts);
    ProductSearchVerdict v;
    v.best_value = best.value;
    if (best.value >= 1.0 - tol) {
        v.found = true;
        v.witness = best.pv;
    }
    return v;
}

namespace {

// Greedy collection of product vectors in range(p), steered away from the
// span found so far, with a refinement pass on p itself.
std::vector<ProductVector> collect_product_vectors(const BipartiteOperator& p,
                                                   const SeesawOptions& opts, double tol,
                                                   std::vector<CVec>* ortho_out) {
    const std::size_t rank_p =
        static_cast<std::size_t>(std::llround(std::real(p.mat.trace())));
    std::vector<ProductVector> found;
    std::vector<CVec> ortho;  // orthonormal basis of span(found)
    std::size_t failures = 0;
    std::uint64_t round = 0;
    while (found.size() < rank_p && failures < 3) {
        BipartiteOperator deflated = p;
        for (const auto& e : ortho) deflated.mat -= ComplexMatrix::outer(e, e);
        SeesawOptions sub = opts;
        sub.seed = opts.seed + 0x517cc1b727220a95ULL * (++round);
        SeesawRun cand = seesaw_many(deflated, true, sub);
        // refine on p itself only when the deflated candidate falls short;
        // refining an already-optimal candidate can collapse it onto an
        // arbitrary eigenvector of a degenerate conditioned block
        SeesawRun refined{product_expectation(p, cand.pv), cand.pv};
        if (refined.value < 1.0 - tol) refined = seesaw_once(p, cand.pv, true, opts);
        bool accepted = false;
        if (refined.value >= 1.0 - tol) {
            // keep the span basis exactly inside range(p)
            CVec x = mat_vec(p.mat, refined.pv.full());
            normalize(x);
            for (const auto& e : ortho) {
                const cplx c = inner(e, x);
                for (std::size_t i = 0; i < x.size(); ++i) x[i] -= c * e[i];
            }
            if (norm(x) > 1e-6) {
                normalize(x);
                ortho.push_back(std::move(x));
                found.push_back(refined.pv);
                failures = 0;
                accepted = true;
            }
        }
        if (!accepted) ++failures;
    }
    if (ortho_out) *ortho_out = std::move(ortho);
    return found;
}

}  // namespace

SpanVerdict spanned_by_product_vectors(const BipartiteOperator& p, const SeesawOptions& opts,
                                       double tol) {
    require_projector(p);
    SpanVerdict v;
    v.needed_rank = static_cast<std::size_t>(std::llround(std::real(p.mat.trace())));
    std::vector<CVec> ortho;
    std::vector<ProductVector> found = collect_product_vectors(p, opts, tol, &ortho);
    v.found_rank = found.size();
    if (v.found_rank == v.needed_rank) {
        v.spanned = true;
        v.basis = std::move(found);
    }
    return v;
}

ProductSplit split_product_part(const BipartiteOperator& p, const SeesawOptions& opts,
                                double tol) {
    require_projector(p);
    std::vector<CVec> ortho;
    ProductSplit out;
    out.product_basis = collect_product_vectors(p, opts, tol, &ortho);
    const std::size_t d = p.dim();
    ComplexMatrix p11(d, d);
    for (const auto& e : ortho) p11 += ComplexMatrix::outer(e, e);
    out.p11.dim_a = p.dim_a;
    out.p11.dim_b = p.dim_b;
    out.p11.mat = p11;
    out.p12.dim_a = p.dim_a;
    out.p12.dim_b = p.dim_b;
    out.p12.mat = p.mat - p11;
    return out;
}

}  // namespace luequiv
