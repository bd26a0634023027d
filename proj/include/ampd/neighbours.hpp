// Licensed under the Apache License, Version 2.0.
// http://www.apache.org/licenses/LICENSE-2.0
#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "ampd/metric.hpp"
#include "ampd/sparse.hpp"

namespace ampd {

struct Neighbour {
    double distance;
    std::uint32_t index;  // position in the training set

    friend bool operator<(const Neighbour& a, const Neighbour& b) {
        if (a.distance != b.distance) return a.distance < b.distance;
        return a.index < b.index;
    }
    friend bool operator==(const Neighbour& a, const Neighbour& b) {
        return a.distance == b.distance && a.index == b.index;
    }
};

// Ascending by (distance, index); ties on distance are broken by training
// index so results never depend on evaluation order.
using NeighbourList = std::vector<Neighbour>;

enum class Restrict { all, in_class, out_class };

// Exact brute-force top-k over a training set normalized once per
// (dataset, p). No pruning: the sweep includes non-metric configurations,
// so every distance is evaluated through the sparse fast path.
class NeighbourSearcher {
public:
    NeighbourSearcher(const LabeledDataset& train, const MetricSpec& spec);

    // Shares an existing normalization cache (data->p must equal spec.p);
    // the sweep uses this to serve rooted and rootless cells at one p
    // without normalizing twice.
    NeighbourSearcher(std::shared_ptr<const NormalizedDataset> data,
                      const LabeledDataset& train, const MetricSpec& spec);

    NormalizedVector normalize_query(const SparseVector& query) const;

    // k smallest (distance, index) pairs in the restricted pool; lists
    // truncate when k exceeds the pool. Throws if the restricted pool is
    // empty or rc uses a class the training set lacks.
    NeighbourList top_k(const NormalizedVector& query, Restrict restrict, ClassId rc,
                        std::size_t k) const;
    NeighbourList top_k(const SparseVector& query, Restrict restrict, ClassId rc,
                        std::size_t k) const;

    // One whole-set pass: the top-k of every decision class at once.
    // Feeds the batch scorers, which derive whole-set and out-of-class
    // lists by merging (any global k-nearest item is among the k nearest
    // of its own class).
    std::vector<NeighbourList> per_class_top_k(const NormalizedVector& query,
                                               std::size_t k) const;

    std::size_t size() const { return data_->items.size(); }
    std::size_t n_classes() const { return n_classes_; }
    ClassId label(std::size_t i) const { return labels_[i]; }
    const std::vector<ClassId>& labels() const { return labels_; }
    const MetricSpec& spec() const { return spec_; }

private:
    std::shared_ptr<const NormalizedDataset> data_;
    std::vector<ClassId> labels_;
    std::vector<std::string> class_names_;
    std::size_t n_classes_;
    MetricSpec spec_;
};

// Single-shot form of the searcher; normalizes the pool per call.
NeighbourList top_k(const SparseVector& query, const LabeledDataset& pool, Restrict restrict,
                    ClassId rc, std::size_t k, const MetricSpec& spec);

// k smallest of the concatenation of sorted lists (stable across list
// order; ties resolved by the Neighbour order).
NeighbourList merge_k_smallest(const std::vector<const NeighbourList*>& lists, std::size_t k);

}  // namespace ampd
