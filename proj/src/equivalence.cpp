#include "luequiv/equivalence.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "luequiv/rng.hpp"

namespace luequiv {

const char* to_string(VerdictKind k) {
    switch (k) {
        case VerdictKind::Equivalent: return "equivalent";
        case VerdictKind::Inequivalent: return "inequivalent";
        case VerdictKind::Undecided: return "undecided";
    }
    return "?";
}

const char* to_string(CertificateKind k) {
    switch (k) {
        case CertificateKind::SpectrumMismatch: return "SpectrumMismatch";
        case CertificateKind::LocalSpectrumMismatch: return "LocalSpectrumMismatch";
        case CertificateKind::SchmidtMismatch: return "SchmidtMismatch";
        case CertificateKind::CommutantObstruction: return "CommutantObstruction";
        case CertificateKind::ClassMismatch: return "ClassMismatch";
    }
    return "?";
}

namespace {

std::size_t projector_rank(const BipartiteOperator& p) {
    return static_cast<std::size_t>(std::llround(std::real(p.mat.trace())));
}

std::vector<double> sorted_spectrum(const ComplexMatrix& h) {
    EigResult e = hermitian_eig(h);
    return e.values;  // already ascending
}

bool spectra_close(const std::vector<double>& a, const std::vector<double>& b, double tol) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (std::abs(a[i] - b[i]) > tol) return false;
    return true;
}

std::optional<std::vector<double>> rank_one_schmidt(const BipartiteOperator& p) {
    if (projector_rank(p) != 1) return std::nullopt;
    EigResult e = hermitian_eig(p.mat);
    CVec psi = e.vectors.column(p.dim() - 1);  // top eigenvector
    SchmidtForm s = schmidt_decompose(psi, p.dim_a, p.dim_b);
    return s.coefficients;
}

double tuple_residual(const std::vector<BipartiteOperator>& ps,
                      const std::vector<BipartiteOperator>& qs, const LocalUnitary& lu) {
    const ComplexMatrix w = lu.full();
    const ComplexMatrix wd = w.adjoint();
    double r = 0.0;
    for (std::size_t j = 0; j < ps.size(); ++j) {
        ComplexMatrix d = w * qs[j].mat * wd - ps[j].mat;
        const double f = d.frobenius_norm();
        r += f * f;
    }
    return r;
}

// Polar factor U_p of k (k = U_p H); near-singular k is regularized and the
// result cleaned by a Newton step.
ComplexMatrix polar_unitary(const ComplexMatrix& k) {
    const std::size_t n = k.rows();
    if (k.frobenius_norm() < 1e-12) return ComplexMatrix::identity(n);
    ComplexMatrix gram = k.adjoint() * k;
    EigResult e = hermitian_eig(gram);
    const double eps = 1e-14 * (1.0 + e.values.back());
    ComplexMatrix inv_sqrt(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            cplx s = 0.0;
            for (std::size_t l = 0; l < n; ++l)
                s += e.vectors(i, l) * (1.0 / std::sqrt(std::max(e.values[l], eps))) *
                     std::conj(e.vectors(j, l));
            inv_sqrt(i, j) = s;
        }
    ComplexMatrix u = k * inv_sqrt;
    for (int it = 0; it < 2; ++it) {
        ComplexMatrix corr = u * u.adjoint() * u;
        corr *= cplx(0.5);
        ComplexMatrix u2 = u;
        u2 *= cplx(1.5);
        u = u2 - corr;
    }
    return u;
}

// tr((U (x) I) X) = tr(U K) with K[k][i] = sum_j X[(k,j),(i,j)]
ComplexMatrix contract_b(const ComplexMatrix& x, std::size_t m, std::size_t n) {
    ComplexMatrix k(m, m);
    for (std::size_t p = 0; p < m; ++p)
        for (std::size_t q = 0; q < m; ++q) {
            cplx s = 0.0;
            for (std::size_t j = 0; j < n; ++j) s += x(p * n + j, q * n + j);
            k(p, q) = s;
        }
    return k;
}

// tr((I (x) V) Y) = tr(V L) with L[l][j] = sum_i Y[(i,l),(i,j)]
ComplexMatrix contract_a(const ComplexMatrix& y, std::size_t m, std::size_t n) {
    ComplexMatrix l(n, n);
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q) {
            cplx s = 0.0;
            for (std::size_t i = 0; i < m; ++i) s += y(i * n + p, i * n + q);
            l(p, q) = s;
        }
    return l;
}

// Alternating linearized trace maximization over (U, V).
LocalUnitary polar_seesaw(const std::vector<BipartiteOperator>& ps,
                          const std::vector<BipartiteOperator>& qs, LocalUnitary lu,
                          std::size_t iters) {
    const std::size_t m = ps.front().dim_a, n = ps.front().dim_b;
    double prev = tuple_residual(ps, qs, lu);
    LocalUnitary best = lu;
    double best_r = prev;
    for (std::size_t it = 0; it < iters; ++it) {
        {
            ComplexMatrix iv = kron(ComplexMatrix::identity(m), lu.v);
            ComplexMatrix ui = kron(lu.u, ComplexMatrix::identity(n));
            ComplexMatrix k(m, m);
            for (std::size_t j = 0; j < ps.size(); ++j) {
                ComplexMatrix x = iv * qs[j].mat * iv.adjoint() * ui.adjoint() * ps[j].mat;
                k += contract_b(x, m, n);
            }
            lu.u = polar_unitary(k).adjoint();
        }
        {
            ComplexMatrix ui = kron(lu.u, ComplexMatrix::identity(n));
            ComplexMatrix iv = kron(ComplexMatrix::identity(m), lu.v);
            ComplexMatrix l(n, n);
            for (std::size_t j = 0; j < ps.size(); ++j) {
                ComplexMatrix y = ui * qs[j].mat * ui.adjoint() * iv.adjoint() * ps[j].mat;
                l += contract_a(y, m, n);
            }
            lu.v = polar_unitary(l).adjoint();
        }
        const double cur = tuple_residual(ps, qs, lu);
        if (cur < best_r) {
            best_r = cur;
            best = lu;
        }
        if (std::abs(prev - cur) < 1e-15 || cur < 1e-16) break;
        prev = cur;
    }
    return best;
}

// Hermitian coordinate basis for the generator of one factor.
std::vector<ComplexMatrix> generator_basis(std::size_t d) {
    std::vector<ComplexMatrix> out;
    for (std::size_t i = 0; i < d; ++i) {
        ComplexMatrix e(d, d);
        e(i, i) = 1.0;
        out.push_back(e);
    }
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j) {
            ComplexMatrix ex(d, d);
            ex(i, j) = 1.0;
            ex(j, i) = 1.0;
            out.push_back(ex);
            ComplexMatrix ey(d, d);
            ey(i, j) = cplx(0.0, -1.0);
            ey(j, i) = cplx(0.0, 1.0);
            out.push_back(ey);
        }
    return out;
}

// Derivative-free coordinate pattern search on the two Hermitian generators,
// with shrinking step.
LocalUnitary pattern_polish(const std::vector<BipartiteOperator>& ps,
                            const std::vector<BipartiteOperator>& qs, LocalUnitary lu,
                            const SearchOptions& opts) {
    const std::size_t m = ps.front().dim_a, n = ps.front().dim_b;
    const auto basis_u = generator_basis(m);
    const auto basis_v = generator_basis(n);
    double best = tuple_residual(ps, qs, lu);
    double step = opts.pattern_step_init;
    std::size_t sweeps = 0;
    while (step >= opts.pattern_step_min && best > opts.accept_tol * 0.1 && sweeps < 400) {
        bool improved = false;
        ++sweeps;
        for (int side = 0; side < 2; ++side) {
            const auto& basis = side == 0 ? basis_u : basis_v;
            for (const auto& e : basis) {
                for (double sgn : {1.0, -1.0}) {
                    ComplexMatrix g = e;
                    g *= cplx(sgn * step);
                    LocalUnitary cand = lu;
                    ComplexMatrix rot = unitary_from_generator(g);
                    if (side == 0)
                        cand.u = rot * lu.u;
                    else
                        cand.v = rot * lu.v;
                    const double r = tuple_residual(ps, qs, cand);
                    if (r < best - 1e-16) {
                        best = r;
                        lu = cand;
                        improved = true;
                        break;
                    }
                }
            }
        }
        if (!improved) step *= 0.5;
    }
    return lu;
}

// Extend an orthonormal set to a full basis and pack as unitary columns.
ComplexMatrix complete_basis(std::vector<CVec> vs, std::size_t d) {
    for (std::size_t cand = 0; cand < d && vs.size() < d; ++cand) {
        CVec x(d, 0.0);
        x[cand] = 1.0;
        for (const auto& v : vs) {
            const cplx c = inner(v, x);
            for (std::size_t i = 0; i < d; ++i) x[i] -= c * v[i];
        }
        if (norm(x) > 1e-6) {
            normalize(x);
            vs.push_back(std::move(x));
        }
    }
    ComplexMatrix u(d, d);
    for (std::size_t j = 0; j < vs.size() && j < d; ++j) u.set_column(j, vs[j]);
    return u;
}

// Initial guess aligning the eigenbases of the local marginals of the two
// synthetically weighted tuple operators.
std::optional<LocalUnitary> marginal_start(const std::vector<BipartiteOperator>& ps,
                                           const std::vector<BipartiteOperator>& qs) {
    const std::size_t m = ps.front().dim_a, n = ps.front().dim_b;
    BipartiteOperator h = ps.front(), k = qs.front();
    h.mat = ComplexMatrix(m * n, m * n);
    k.mat = ComplexMatrix(m * n, m * n);
    for (std::size_t j = 0; j < ps.size(); ++j) {
        ComplexMatrix t = ps[j].mat;
        t *= cplx(static_cast<double>(j + 1));
        h.mat += t;
        t = qs[j].mat;
        t *= cplx(static_cast<double>(j + 1));
        k.mat += t;
    }
    auto sym = [](ComplexMatrix x) {
        ComplexMatrix r = x + x.adjoint();
        r *= cplx(0.5);
        return r;
    };
    EigResult ha = hermitian_eig(sym(partial_trace(h, Factor::B)));
    EigResult ka = hermitian_eig(sym(partial_trace(k, Factor::B)));
    EigResult hb = hermitian_eig(sym(partial_trace(h, Factor::A)));
    EigResult kb = hermitian_eig(sym(partial_trace(k, Factor::A)));
    LocalUnitary lu;
    lu.u = polar_unitary(ha.vectors * ka.vectors.adjoint());
    lu.v = polar_unitary(hb.vectors * kb.vectors.adjoint());
    return lu;
}

// Initial guess from the Schmidt bases of the first rank-one projector pair.
std::optional<LocalUnitary> schmidt_start(const std::vector<BipartiteOperator>& ps,
                                          const std::vector<BipartiteOperator>& qs) {
    const std::size_t m = ps.front().dim_a, n = ps.front().dim_b;
    for (std::size_t j = 0; j < ps.size(); ++j) {
        if (projector_rank(ps[j]) != 1 || projector_rank(qs[j]) != 1) continue;
        EigResult ep = hermitian_eig(ps[j].mat);
        EigResult eq = hermitian_eig(qs[j].mat);
        SchmidtForm sp = schmidt_decompose(ep.vectors.column(m * n - 1), m, n);
        SchmidtForm sq = schmidt_decompose(eq.vectors.column(m * n - 1), m, n);
        if (sp.coefficients.size() != sq.coefficients.size()) continue;
        ComplexMatrix up = complete_basis(sp.basis_a, m);
        ComplexMatrix uq = complete_basis(sq.basis_a, m);
        ComplexMatrix vp = complete_basis(sp.basis_b, n);
        ComplexMatrix vq = complete_basis(sq.basis_b, n);
        LocalUnitary lu;
        lu.u = polar_unitary(up * uq.adjoint());
        lu.v = polar_unitary(vp * vq.adjoint());
        return lu;
    }
    return std::nullopt;
}

struct DiagonalForm {
    std::size_t level;
    std::vector<double> diag;  // 0/1 entries on the B factor
};

// p == |e_level><e_level| (x) diag(0/1) in the computational basis?
std::optional<DiagonalForm> as_level_diagonal(const BipartiteOperator& p) {
    const std::size_t m = p.dim_a, n = p.dim_b;
    for (std::size_t r = 0; r < m * n; ++r)
        for (std::size_t c = 0; c < m * n; ++c)
            if (r != c && std::abs(p.mat(r, c)) > 1e-12) return std::nullopt;
    std::optional<std::size_t> level;
    std::vector<double> diag(n, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        bool any = false;
        for (std::size_t j = 0; j < n; ++j) {
            const double v = std::real(p.mat(i * n + j, i * n + j));
            if (std::abs(v) > 1e-12) {
                if (std::abs(v - 1.0) > 1e-12) return std::nullopt;
                any = true;
            }
        }
        if (any) {
            if (level.has_value()) return std::nullopt;  // support on two A levels
            level = i;
            for (std::size_t j = 0; j < n; ++j)
                diag[j] = std::real(p.mat(i * n + j, i * n + j)) > 0.5 ? 1.0 : 0.0;
        }
    }
    if (!level.has_value()) return std::nullopt;
    return DiagonalForm{*level, std::move(diag)};
}

// Exact decision for tuples of the form |e_l><e_l| (x) diag(0/1): a common
// conjugating unitary on the B factor exists iff the per-index signature
// columns of the two diagonal families agree as multisets.
std::optional<EquivalenceVerdict> diagonal_exact_path(
    const std::vector<BipartiteOperator>& ps, const std::vector<BipartiteOperator>& qs,
    const SearchOptions& opts) {
    std::vector<DiagonalForm> dp, dq;
    for (std::size_t j = 0; j < ps.size(); ++j) {
        auto a = as_level_diagonal(ps[j]);
        auto b = as_level_diagonal(qs[j]);
        if (!a || !b || a->level != b->level) return std::nullopt;
        dp.push_back(std::move(*a));
        dq.push_back(std::move(*b));
    }
    const std::size_t n = ps.front().dim_b;
    const std::size_t m = ps.front().dim_a;

    auto signature = [&](const std::vector<DiagonalForm>& d, std::size_t k) {
        std::vector<double> s;
        for (const auto& f : d) s.push_back(f.diag[k]);
        return s;
    };
    std::map<std::vector<double>, std::vector<std::size_t>> cols_p, cols_q;
    for (std::size_t k = 0; k < n; ++k) {
        cols_p[signature(dp, k)].push_back(k);
        cols_q[signature(dq, k)].push_back(k);
    }
    bool match = cols_p.size() == cols_q.size();
    std::vector<double> bad_sig;
    if (match) {
        for (const auto& [sig, idx] : cols_p) {
            auto it = cols_q.find(sig);
            if (it == cols_q.end() || it->second.size() != idx.size()) {
                match = false;
                bad_sig = sig;
                break;
            }
        }
    }
    EquivalenceVerdict v;
    if (!match) {
        v.kind = VerdictKind::Inequivalent;
        InequivalenceCertificate cert;
        cert.kind = CertificateKind::CommutantObstruction;
        // name the first projector whose diagonals differ
        for (std::size_t j = 0; j < dp.size(); ++j)
            if (dp[j].diag != dq[j].diag) {
                cert.index = static_cast<int>(j);
                break;
            }
        cert.detail =
            "no unitary on the B factor commutes with the shared diagonals and maps the "
            "remaining diagonal onto its target";
        v.certificate = cert;
        return v;
    }
    // build the block permutation: q-column k goes to a p-column with equal signature
    std::vector<std::size_t> perm(n);
    for (auto& [sig, idx_p] : cols_p) {
        const auto& idx_q = cols_q[sig];
        for (std::size_t t = 0; t < idx_p.size(); ++t) perm[idx_q[t]] = idx_p[t];
    }
    ComplexMatrix pu(n, n);
    for (std::size_t k = 0; k < n; ++k) pu(perm[k], k) = 1.0;
    LocalUnitary lu(ComplexMatrix::identity(m), std::move(pu));
    v.residual = tuple_residual(ps, qs, lu);
    if (v.residual <= opts.accept_tol) {
        v.kind = VerdictKind::Equivalent;
        v.lu = std::move(lu);
        return v;
    }
    return std::nullopt;  // should not happen; fall back to the numerical path
}

void validate_tuples(const std::vector<BipartiteOperator>& ps,
                     const std::vector<BipartiteOperator>& qs) {
    if (ps.empty() || ps.size() != qs.size())
        throw std::invalid_argument("decide_slu: tuples must be nonempty and of equal length");
    const std::size_t m = ps.front().dim_a, n = ps.front().dim_b;
    for (const auto* t : {&ps, &qs})
        for (const auto& p : *t)
            if (p.dim_a != m || p.dim_b != n)
                throw std::invalid_argument("decide_slu: inconsistent dimensions");
    for (const auto* t : {&ps, &qs})
        for (std::size_t i = 0; i < t->size(); ++i)
            for (std::size_t j = i + 1; j < t->size(); ++j) {
                ComplexMatrix prod = (*t)[i].mat * (*t)[j].mat;
                if (prod.max_abs() > 1e-8)
                    throw std::invalid_argument("decide_slu: projectors " + std::to_string(i) +
                                                "," + std::to_string(j) +
                                                " are not orthogonal");
            }
}

}  // namespace

LuInvariants lu_invariants(const BipartiteOperator& h) {
    SpectralDecomposition sd = spectral_decompose(h);
    LuInvariants inv;
    inv.eigenvalues = sd.eigenvalues;
    inv.multiplicities = sd.multiplicities;
    for (const auto& p : sd.projectors) {
        inv.local_spectra_a.push_back(sorted_spectrum(partial_trace(p, Factor::A)));
        inv.local_spectra_b.push_back(sorted_spectrum(partial_trace(p, Factor::B)));
        inv.schmidt.push_back(rank_one_schmidt(p));
    }
    return inv;
}

EquivalenceVerdict decide_slu(const std::vector<BipartiteOperator>& ps,
                              const std::vector<BipartiteOperator>& qs,
                              const SearchOptions& opts) {
    validate_tuples(ps, qs);
    EquivalenceVerdict v;

    for (std::size_t j = 0; j < ps.size(); ++j) {
        if (projector_rank(ps[j]) != projector_rank(qs[j])) {
            v.kind = VerdictKind::Inequivalent;
            v.certificate = InequivalenceCertificate{CertificateKind::SpectrumMismatch,
                                                     static_cast<int>(j), std::nullopt,
                                                     "projector rank mismatch"};
            return v;
        }
    }

    // per-projector LU-invariant screens
    for (std::size_t j = 0; j < ps.size(); ++j) {
        auto sp = rank_one_schmidt(ps[j]);
        auto sq = rank_one_schmidt(qs[j]);
        if (sp && sq && !spectra_close(*sp, *sq, 1e-8)) {
            v.kind = VerdictKind::Inequivalent;
            v.certificate = InequivalenceCertificate{CertificateKind::SchmidtMismatch,
                                                     static_cast<int>(j), std::nullopt,
                                                     "Schmidt coefficients differ"};
            return v;
        }
        for (Factor f : {Factor::A, Factor::B}) {
            auto la = sorted_spectrum(partial_trace(ps[j], f));
            auto lb = sorted_spectrum(partial_trace(qs[j], f));
            if (!spectra_close(la, lb, 1e-8)) {
                v.kind = VerdictKind::Inequivalent;
                v.certificate = InequivalenceCertificate{
                    CertificateKind::LocalSpectrumMismatch, static_cast<int>(j), f,
                    "local spectra of the projector pair differ"};
                return v;
            }
        }
    }

    if (auto exact = diagonal_exact_path(ps, qs, opts)) return *exact;

    // numerical search: smart starts + seeded random restarts, polar seesaw
    // refinement, then generator pattern search
    const std::size_t m = ps.front().dim_a, n = ps.front().dim_b;
    Rng master(opts.seed);
    LocalUnitary best = LocalUnitary::identity(m, n);
    double best_r = tuple_residual(ps, qs, best);

    auto try_start = [&](LocalUnitary start) {
        LocalUnitary cand = polar_seesaw(ps, qs, std::move(start), opts.polar_iters);
        double r = tuple_residual(ps, qs, cand);
        if (r > opts.accept_tol) {
            cand = pattern_polish(ps, qs, std::move(cand), opts);
            r = tuple_residual(ps, qs, cand);
        }
        if (r < best_r) {
            best_r = r;
            best = cand;
        }
    };

    if (auto s = marginal_start(ps, qs)) try_start(*s);
    if (best_r > opts.accept_tol)
        if (auto s = schmidt_start(ps, qs)) try_start(*s);
    if (best_r > opts.accept_tol) try_start(LocalUnitary::identity(m, n));
    for (std::size_t r = 0; r < opts.restarts && best_r > opts.accept_tol; ++r) {
        Rng sub = master.substream(r);
        try_start(sub.local_unitary(m, n));
    }

    // independent re-verification of the candidate
    v.residual = tuple_residual(ps, qs, best);
    v.lu = best;
    v.kind = v.residual <= opts.accept_tol ? VerdictKind::Equivalent : VerdictKind::Undecided;
    return v;
}

EquivalenceVerdict decide_lu(const BipartiteOperator& h, const BipartiteOperator& k,
                             const SearchOptions& opts) {
    if (h.dim_a != k.dim_a || h.dim_b != k.dim_b)
        throw std::invalid_argument("decide_lu: dimension mismatch");
    SpectraMatchReport rep = spectra_match(h, k);
    if (!rep.match) {
        EquivalenceVerdict v;
        v.kind = VerdictKind::Inequivalent;
        v.certificate = InequivalenceCertificate{CertificateKind::SpectrumMismatch,
                                                 rep.first_mismatch, std::nullopt, rep.reason};
        return v;
    }
    SpectralDecomposition dh = spectral_decompose(h);
    SpectralDecomposition dk = spectral_decompose(k);
    return decide_slu(dh.projectors, dk.projectors, opts);
}

std::vector<BipartiteOperator> gauge_fix(const std::vector<BipartiteOperator>& ps,
                                         const std::vector<BipartiteOperator>& qs,
                                         const LocalUnitary& pair_witness,
                                         const std::vector<std::size_t>& fixed) {
    for (std::size_t i : fixed) {
        if (i >= ps.size()) throw std::invalid_argument("gauge_fix: fixed index out of range");
        BipartiteOperator moved = conjugate_lu(qs[i], pair_witness);
        ComplexMatrix d = moved.mat - ps[i].mat;
        if (d.frobenius_norm() > 1e-8 * (1.0 + ps[i].mat.frobenius_norm()))
            throw std::invalid_argument("gauge_fix: witness does not map fixed index " +
                                        std::to_string(i));
    }
    std::vector<BipartiteOperator> out;
    out.reserve(qs.size());
    for (const auto& q : qs) out.push_back(conjugate_lu(q, pair_witness));
    return out;
}

std::size_t BlockPartition::size() const {
    std::size_t s = 0;
    for (const auto& b : blocks) s += b.size();
    return s;
}

BlockPartition commutant_blocks(const ComplexMatrix& h) {
    const std::size_t d = h.rows();
    std::vector<double> vals(d);
    bool diagonal = true;
    for (std::size_t i = 0; i < d && diagonal; ++i)
        for (std::size_t j = 0; j < d; ++j)
            if (i != j && std::abs(h(i, j)) > 1e-10 * (1.0 + h.max_abs())) diagonal = false;
    if (diagonal) {
        for (std::size_t i = 0; i < d; ++i) vals[i] = std::real(h(i, i));
    } else {
        EigResult e = hermitian_eig(h);
        vals = e.values;  // blocks live in the eigenbasis ordering
    }
    double radius = 0.0;
    for (double v : vals) radius = std::max(radius, std::abs(v));
    const double tol = 1e-8 * (1.0 + radius);

    BlockPartition part;
    std::vector<bool> used(d, false);
    for (std::size_t i = 0; i < d; ++i) {
        if (used[i]) continue;
        std::vector<std::size_t> block{i};
        used[i] = true;
        for (std::size_t j = i + 1; j < d; ++j)
            if (!used[j] && std::abs(vals[j] - vals[i]) <= tol) {
                block.push_back(j);
                used[j] = true;
            }
        part.blocks.push_back(std::move(block));
    }
    return part;
}

BlockPartition refine_partition(const std::vector<BlockPartition>& parts) {
    if (parts.empty()) throw std::invalid_argument("refine_partition: empty input");
    const std::size_t d = parts.front().size();
    for (const auto& p : parts)
        if (p.size() != d) throw std::invalid_argument("refine_partition: size mismatch");

    std::vector<std::vector<std::size_t>> labels(d);
    for (const auto& p : parts) {
        std::vector<std::size_t> lab(d);
        for (std::size_t b = 0; b < p.blocks.size(); ++b)
            for (std::size_t i : p.blocks[b]) lab[i] = b;
        for (std::size_t i = 0; i < d; ++i) labels[i].push_back(lab[i]);
    }
    std::map<std::vector<std::size_t>, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < d; ++i) groups[labels[i]].push_back(i);
    BlockPartition out;
    std::vector<std::pair<std::size_t, std::vector<std::size_t>>> ordered;
    for (auto& [k, idx] : groups) ordered.emplace_back(idx.front(), idx);
    std::sort(ordered.begin(), ordered.end());
    for (auto& [first, idx] : ordered) out.blocks.push_back(idx);
    return out;
}

DiagonalReachability diagonal_slu_decide(const std::vector<std::vector<double>>& fixed_diagonals,
                                         const std::vector<double>& source,
                                         const std::vector<double>& target) {
    const std::size_t d = source.size();
    if (target.size() != d)
        throw std::invalid_argument("diagonal_slu_decide: length mismatch");
    std::vector<BlockPartition> parts;
    for (const auto& f : fixed_diagonals) {
        if (f.size() != d) throw std::invalid_argument("diagonal_slu_decide: length mismatch");
        parts.push_back(commutant_blocks(ComplexMatrix::diagonal(f)));
    }
    if (parts.empty()) {
        BlockPartition whole;
        whole.blocks.push_back({});
        for (std::size_t i = 0; i < d; ++i) whole.blocks.back().push_back(i);
        parts.push_back(whole);
    }
    BlockPartition meet = refine_partition(parts);

    DiagonalReachability out;
    out.permutation.assign(d, 0);
    for (std::size_t b = 0; b < meet.blocks.size(); ++b) {
        const auto& blk = meet.blocks[b];
        std::vector<std::size_t> src_idx = blk, tgt_idx = blk;
        std::sort(src_idx.begin(), src_idx.end(),
                  [&](std::size_t x, std::size_t y) { return source[x] < source[y]; });
        std::sort(tgt_idx.begin(), tgt_idx.end(),
                  [&](std::size_t x, std::size_t y) { return target[x] < target[y]; });
        for (std::size_t t = 0; t < blk.size(); ++t) {
            if (std::abs(source[src_idx[t]] - target[tgt_idx[t]]) > 1e-9) {
                out.reachable = false;
                out.blocking_block = static_cast<int>(b);
                out.detail = "entry multisets differ within a commutant block";
                return out;
            }
            out.permutation[src_idx[t]] = tgt_idx[t];
        }
    }
    out.reachable = true;
    return out;
}

bool lu_equal_up_to_phase(const LocalUnitary& x, const LocalUnitary& y, double tol) {
    auto factor_equal = [&](const ComplexMatrix& a, const ComplexMatrix& b) {
        if (a.rows() != b.rows()) return false;
        cplx c = (a.adjoint() * b).trace() / static_cast<double>(a.rows());
        if (std::abs(c) < 1.0 - 1e-6) return false;
        c /= std::abs(c);
        ComplexMatrix d = b;
        ComplexMatrix e = a;
        e *= c;
        d -= e;
        return d.max_abs() <= tol;
    };
    return factor_equal(x.u, y.u) && factor_equal(x.v, y.v);
}

bool FiniteLuGroup::verify_closed() const {
    if (elements.empty()) return false;
    const std::size_t m = elements.front().u.rows(), n = elements.front().v.rows();
    const LocalUnitary id = LocalUnitary::identity(m, n);
    auto member = [&](const LocalUnitary& x) {
        for (const auto& e : elements)
            if (lu_equal_up_to_phase(e, x)) return true;
        return false;
    };
    if (!member(id)) return false;
    for (const auto& a : elements)
        for (const auto& b : elements) {
            LocalUnitary prod;
            prod.u = a.u * b.u;
            prod.v = a.v * b.v;
            if (!member(prod)) return false;
        }
    return true;
}

BipartiteOperator twirl_finite(const BipartiteOperator& rho, const FiniteLuGroup& g) {
    if (!g.verify_closed())
        throw std::invalid_argument("twirl_finite: group is not closed");
    BipartiteOperator out = rho;
    out.mat = ComplexMatrix(rho.dim(), rho.dim());
    for (const auto& e : g.elements) out.mat += conjugate_lu(rho, e).mat;
    out.mat *= cplx(1.0 / static_cast<double>(g.elements.size()));
    ComplexMatrix sym = out.mat + out.mat.adjoint();
    sym *= cplx(0.5);
    out.mat = std::move(sym);
    return out;
}

bool is_group_invariant(const BipartiteOperator& rho, const FiniteLuGroup& g) {
    BipartiteOperator t = twirl_finite(rho, g);
    ComplexMatrix d = t.mat - rho.mat;
    return d.frobenius_norm() <= 1e-8;
}

EquivalenceVerdict slu_triple_check(const BipartiteOperator& rho1, const BipartiteOperator& rho2,
                                    const BipartiteOperator& rho3, const BipartiteOperator& sigma3,
                                    const FiniteLuGroup& g1, const FiniteLuGroup& g2,
                                    bool groups_exhaust_commutant) {
    if (!is_group_invariant(rho1, g1))
        throw std::invalid_argument("slu_triple_check: rho1 is not invariant under g1");
    if (!is_group_invariant(rho2, g2))
        throw std::invalid_argument("slu_triple_check: rho2 is not invariant under g2");

    std::vector<LocalUnitary> intersection;
    for (const auto& a : g1.elements)
        for (const auto& b : g2.elements)
            if (lu_equal_up_to_phase(a, b)) {
                intersection.push_back(a);
                break;
            }

    EquivalenceVerdict v;
    double best = 1e300;
    for (const auto& e : intersection) {
        BipartiteOperator moved = conjugate_lu(sigma3, e);
        ComplexMatrix d = moved.mat - rho3.mat;
        const double r = d.frobenius_norm();
        if (r < best) {
            best = r;
            v.lu = e;
        }
        if (r <= 1e-8 * (1.0 + rho3.mat.frobenius_norm())) {
            v.kind = VerdictKind::Equivalent;
            v.residual = r * r;
            v.lu = e;  // lexicographically first accepted element
            return v;
        }
    }
    v.residual = best * best;
    if (groups_exhaust_commutant) {
        v.kind = VerdictKind::Inequivalent;
        v.certificate = InequivalenceCertificate{
            CertificateKind::CommutantObstruction, -1, std::nullopt,
            "no element of the group intersection maps sigma3 to rho3"};
    } else {
        v.kind = VerdictKind::Undecided;
    }
    return v;
}

}  // namespace luequiv
