#ifndef LUEQUIV_RNG_HPP
#define LUEQUIV_RNG_HPP

#include <cstdint>
#include <random>

#include "luequiv/complex_matrix.hpp"
#include "luequiv/linalg.hpp"

namespace luequiv {

// All randomness in the library flows through one of these, seeded by the caller.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    // Deterministic sub-stream for restart index i.
    Rng substream(std::uint64_t i) const {
        std::uint64_t s = seed_mix_ ^ (0x9e3779b97f4a7c15ULL * (i + 1));
        return Rng(s);
    }

    double gauss() { return normal_(gen_); }

    cplx cgauss() { return {normal_(gen_), normal_(gen_)}; }

    CVec unit_vector(std::size_t n) {
        CVec v(n);
        for (auto& z : v) z = cgauss();
        normalize(v);
        return v;
    }

    ComplexMatrix hermitian(std::size_t n, double scale = 1.0) {
        ComplexMatrix h(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            h(i, i) = scale * gauss();
            for (std::size_t j = i + 1; j < n; ++j) {
                cplx z = scale * 0.5 * cgauss();
                h(i, j) = z;
                h(j, i) = std::conj(z);
            }
        }
        return h;
    }

    ComplexMatrix unitary(std::size_t n) { return unitary_from_generator(hermitian(n)); }

    LocalUnitary local_unitary(std::size_t m, std::size_t n) {
        return LocalUnitary(unitary(m), unitary(n));
    }

    // Random full-rank density matrix via G G^dag / tr.
    BipartiteOperator state(std::size_t m, std::size_t n) {
        const std::size_t d = m * n;
        ComplexMatrix g(d, d);
        for (auto& z : g.data()) z = cgauss();
        ComplexMatrix rho = g * g.adjoint();
        rho *= cplx(1.0 / std::real(rho.trace()));
        // symmetrize out roundoff
        ComplexMatrix h = rho + rho.adjoint();
        h *= cplx(0.5);
        return BipartiteOperator(m, n, std::move(h));
    }

private:
    explicit Rng(std::uint64_t seed, int) : gen_(seed) {}
    std::mt19937_64 gen_;
    std::uint64_t seed_mix_ = gen_();
    std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace luequiv

#endif
