#ifndef LUEQUIV_PRODUCT_OPT_HPP
#define LUEQUIV_PRODUCT_OPT_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "luequiv/linalg.hpp"

namespace luequiv {

struct ProductVector {
    CVec a;  // unit vector, dimension m
    CVec b;  // unit vector, dimension n

    CVec full() const { return kron_vec(a, b); }
};

struct ProductOptimum {
    double value = 0.0;
    ProductVector arg;
    std::size_t restarts_used = 0;
    double spread = 0.0;  // max - min over restart results
};

struct SeesawOptions {
    std::size_t restarts = 64;
    std::uint64_t seed = 42;
    double iter_tol = 1e-12;
    std::size_t max_iters = 500;
};

// Seesaw ascent over the product manifold; certified lower bound on the max.
ProductOptimum max_product_overlap(const BipartiteOperator& h,
                                   const SeesawOptions& opts = {});

// Seesaw descent; certified upper bound on the min.
ProductOptimum min_product_overlap(const BipartiteOperator& h,
                                   const SeesawOptions& opts = {});

double product_expectation(const BipartiteOperator& h, const ProductVector& pv);

struct ProductSearchVerdict {
    bool found = false;
    ProductVector witness;   // valid when found
    double best_value = 0.0; // best seesaw value either way
};

// Found is a proof; a negative verdict is numerical evidence only.
ProductSearchVerdict contains_product_vector(const BipartiteOperator& p,
                                             const SeesawOptions& opts = {},
                                             double tol = 1e-7);

struct SpanVerdict {
    bool spanned = false;
    std::vector<ProductVector> basis;  // valid when spanned
    std::size_t found_rank = 0;
    std::size_t needed_rank = 0;
};

SpanVerdict spanned_by_product_vectors(const BipartiteOperator& p,
                                       const SeesawOptions& opts = {},
                                       double tol = 1e-7);

// p = p11 + p12 with p11 the span of the product vectors found in range(p).
struct ProductSplit {
    BipartiteOperator p11;
    BipartiteOperator p12;
    std::vector<ProductVector> product_basis;
};

ProductSplit split_product_part(const BipartiteOperator& p,
                                const SeesawOptions& opts = {},
                                double tol = 1e-7);

}  // namespace luequiv

#endif
