// Licensed under the Apache License, Version 2.0.
// http://www.apache.org/licenses/LICENSE-2.0
#pragma once

#include <vector>

#include "ampd/sparse.hpp"

namespace ampd {

// Sparse vector scaled to unit Minkowski p-size. `powered[i]` caches
// |values[i]|^p so the pairwise fast path only has to exponentiate the
// difference terms; for a nonzero vector the powered entries sum to 1
// within 1e-9. The zero vector normalizes to itself.
struct NormalizedVector {
    std::vector<TermId> ids;
    std::vector<double> values;
    std::vector<double> powered;
    std::size_t dim = 0;
    double p = 0.0;

    bool is_zero() const { return ids.empty(); }
};

// (sum_i |v_i|^p)^(1/p); 0 for the zero vector. Throws on p <= 0.
double p_size(const SparseVector& v, double p);

// sum_i |v_i|^p, the same size with the outer root omitted.
double rootless_p_size(const SparseVector& v, double p);

NormalizedVector p_normalize(const SparseVector& v, double p);

// Angular Minkowski p-distance |y/|y|_p - x/|x|_p|_p, or the rootless
// variant without the outer 1/p root. Conventions for zero vectors: the
// distance between two zero vectors is 0, and between a zero vector and
// anything else exactly 1 (either flag). Throws on dimension mismatch.
double angular_distance(const SparseVector& x, const SparseVector& y, const MetricSpec& spec);

// 1 - x.y/(|x|_2 |y|_2) via the dot-product form; in [0,1] for nonnegative
// input. Throws if either vector is zero (the angle is undefined).
double cosine_dissimilarity(const SparseVector& x, const SparseVector& y);

// Intersection-only evaluation of the angular distance on pre-normalized
// inputs: since each powered array sums to 1, the rootless value equals
// 2 - sum over the common support of (x_i^p + y_i^p - |x_i - y_i|^p).
// Agrees with angular_distance on the densified inputs within 1e-9.
// Throws if the arguments were normalized under a p other than spec.p.
double angular_distance_sparse_fast(const NormalizedVector& x, const NormalizedVector& y,
                                    const MetricSpec& spec);

// Per-(dataset, p) normalization cache used by the search layer.
struct NormalizedDataset {
    std::vector<NormalizedVector> items;
    double p = 0.0;
    std::size_t dim = 0;
};

NormalizedDataset p_normalize_dataset(const LabeledDataset& ds, double p);

namespace detail {
// The outer 1/p root shared by the rooted paths.
double apply_root(double rootless_value, double p);
}  // namespace detail

}  // namespace ampd
