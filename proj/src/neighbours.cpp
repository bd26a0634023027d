// Licensed under the Apache License, Version 2.0.
// http://www.apache.org/licenses/LICENSE-2.0

#include "ampd/neighbours.hpp"

#include <algorithm>
#include <stdexcept>

namespace ampd {
namespace {

// Bounded selection: a max-heap of the k best candidates seen so far.
struct BoundedHeap {
    std::vector<Neighbour>& items;
    std::size_t k;

    void offer(const Neighbour& n) {
        if (items.size() < k) {
            items.push_back(n);
            std::push_heap(items.begin(), items.end());
        } else if (n < items.front()) {
            std::pop_heap(items.begin(), items.end());
            items.back() = n;
            std::push_heap(items.begin(), items.end());
        }
    }

    void finish() { std::sort_heap(items.begin(), items.end()); }
};

}  // namespace

NeighbourSearcher::NeighbourSearcher(const LabeledDataset& train, const MetricSpec& spec)
    : NeighbourSearcher(
          std::make_shared<const NormalizedDataset>(p_normalize_dataset(train, spec.p)),
          train, spec) {}

NeighbourSearcher::NeighbourSearcher(std::shared_ptr<const NormalizedDataset> data,
                                     const LabeledDataset& train, const MetricSpec& spec)
    : data_(std::move(data)),
      labels_(train.labels()),
      class_names_(train.class_names()),
      n_classes_(train.n_classes()),
      spec_(spec) {
    if (data_->p != spec_.p || data_->items.size() != train.size())
        throw std::invalid_argument(
            "NeighbourSearcher: normalization cache does not match the training set");
}

NormalizedVector NeighbourSearcher::normalize_query(const SparseVector& query) const {
    if (query.dim != data_->dim)
        throw std::invalid_argument("query dimension does not match the training set");
    return p_normalize(query, spec_.p);
}

NeighbourList NeighbourSearcher::top_k(const NormalizedVector& query, Restrict restrict,
                                       ClassId rc, std::size_t k) const {
    if (k < 1) throw std::invalid_argument("top_k: k must be at least 1");
    if (restrict != Restrict::all && rc >= n_classes_)
        throw std::invalid_argument("top_k: unknown class id");

    NeighbourList out;
    out.reserve(k < data_->items.size() ? k : data_->items.size());
    BoundedHeap heap{out, k};
    for (std::size_t i = 0; i < data_->items.size(); ++i) {
        if (restrict == Restrict::in_class && labels_[i] != rc) continue;
        if (restrict == Restrict::out_class && labels_[i] == rc) continue;
        const double d = angular_distance_sparse_fast(query, data_->items[i], spec_);
        heap.offer({d, static_cast<std::uint32_t>(i)});
    }
    if (out.empty()) {
        if (restrict == Restrict::in_class)
            throw std::invalid_argument("top_k: no training instances in class '" +
                                        class_names_[rc] + "'");
        if (restrict == Restrict::out_class)
            throw std::invalid_argument("top_k: no training instances outside class '" +
                                        class_names_[rc] + "'");
        throw std::invalid_argument("top_k: empty pool");
    }
    heap.finish();
    return out;
}

NeighbourList NeighbourSearcher::top_k(const SparseVector& query, Restrict restrict,
                                       ClassId rc, std::size_t k) const {
    return top_k(normalize_query(query), restrict, rc, k);
}

std::vector<NeighbourList> NeighbourSearcher::per_class_top_k(const NormalizedVector& query,
                                                              std::size_t k) const {
    if (k < 1) throw std::invalid_argument("per_class_top_k: k must be at least 1");
    std::vector<NeighbourList> lists(n_classes_);
    std::vector<BoundedHeap> heaps;
    heaps.reserve(n_classes_);
    for (auto& l : lists) heaps.push_back(BoundedHeap{l, k});

    for (std::size_t i = 0; i < data_->items.size(); ++i) {
        const double d = angular_distance_sparse_fast(query, data_->items[i], spec_);
        heaps[labels_[i]].offer({d, static_cast<std::uint32_t>(i)});
    }
    for (auto& h : heaps) h.finish();
    return lists;
}

NeighbourList top_k(const SparseVector& query, const LabeledDataset& pool, Restrict restrict,
                    ClassId rc, std::size_t k, const MetricSpec& spec) {
    return NeighbourSearcher(pool, spec).top_k(query, restrict, rc, k);
}

NeighbourList merge_k_smallest(const std::vector<const NeighbourList*>& lists, std::size_t k) {
    NeighbourList all;
    std::size_t total = 0;
    for (const auto* l : lists) total += l->size();
    all.reserve(total);
    for (const auto* l : lists) all.insert(all.end(), l->begin(), l->end());
    if (all.size() > k) {
        std::nth_element(all.begin(), all.begin() + k, all.end());
        all.resize(k);
    }
    std::sort(all.begin(), all.end());
    return all;
}

}  // namespace ampd
