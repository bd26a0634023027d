// Licensed under the Apache License, Version 2.0.
// http://www.apache.org/licenses/LICENSE-2.0

#include "ampd/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ampd {

SparseVector make_sparse(std::span<const double> dense) {
    SparseVector out;
    out.dim = dense.size();
    for (std::size_t i = 0; i < dense.size(); ++i) {
        const double v = dense[i];
        if (!std::isfinite(v))
            throw std::invalid_argument("non-finite value at index " + std::to_string(i));
        if (v < 0.0)
            throw std::invalid_argument("negative value at index " + std::to_string(i));
        if (v > 0.0) {
            out.ids.push_back(static_cast<TermId>(i));
            out.values.push_back(v);
        }
    }
    return out;
}

std::vector<double> densify(const SparseVector& v) {
    std::vector<double> out(v.dim, 0.0);
    for (std::size_t i = 0; i < v.ids.size(); ++i) out[v.ids[i]] = v.values[i];
    return out;
}

LabeledDataset::LabeledDataset(std::vector<SparseVector> vectors,
                               const std::vector<std::string>& labels)
    : vectors_(std::move(vectors)) {
    if (vectors_.empty()) throw std::invalid_argument("dataset must be non-empty");
    if (vectors_.size() != labels.size())
        throw std::invalid_argument("vectors and labels differ in length");

    dim_ = vectors_.front().dim;
    for (const auto& v : vectors_)
        if (v.dim != dim_) throw std::invalid_argument("vectors differ in dimension");

    class_names_.assign(labels.begin(), labels.end());
    std::sort(class_names_.begin(), class_names_.end());
    class_names_.erase(std::unique(class_names_.begin(), class_names_.end()),
                       class_names_.end());

    labels_.reserve(labels.size());
    class_counts_.assign(class_names_.size(), 0);
    for (const auto& name : labels) {
        const auto it = std::lower_bound(class_names_.begin(), class_names_.end(), name);
        const auto c = static_cast<ClassId>(it - class_names_.begin());
        labels_.push_back(c);
        ++class_counts_[c];
    }
}

ClassId LabeledDataset::find_class(const std::string& name) const {
    const auto it = std::lower_bound(class_names_.begin(), class_names_.end(), name);
    if (it == class_names_.end() || *it != name)
        return static_cast<ClassId>(class_names_.size());
    return static_cast<ClassId>(it - class_names_.begin());
}

MetricSpec::MetricSpec(double p_, bool rootless_) : p(p_), rootless(rootless_) {
    if (!(p > 0.0) || !std::isfinite(p))
        throw std::invalid_argument("metric exponent p must be a positive real");
}

}  // namespace ampd
