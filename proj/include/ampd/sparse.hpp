// Licensed under the Apache License, Version 2.0.
// http://www.apache.org/licenses/LICENSE-2.0
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace ampd {

using TermId = std::uint32_t;
using ClassId = std::uint32_t;

// Sparse nonnegative vector with strictly increasing term ids. Explicit
// zeros are never stored; the zero vector has empty arrays. Ids and values
// live in parallel arrays so the kernel layer can stream them.
struct SparseVector {
    std::vector<TermId> ids;
    std::vector<double> values;
    std::size_t dim = 0;

    std::size_t nnz() const { return ids.size(); }
    bool is_zero() const { return ids.empty(); }
};

// Builds a SparseVector from a dense nonnegative array. Throws
// std::invalid_argument naming the index of any negative or non-finite
// component.
SparseVector make_sparse(std::span<const double> dense);

std::vector<double> densify(const SparseVector& v);

// Immutable collection of equal-dimension sparse vectors with class labels.
// Class names are the sorted set of observed labels; labels are indexes
// into that table.
class LabeledDataset {
public:
    LabeledDataset(std::vector<SparseVector> vectors, const std::vector<std::string>& labels);

    std::size_t size() const { return vectors_.size(); }
    std::size_t dim() const { return dim_; }
    std::size_t n_classes() const { return class_names_.size(); }

    const SparseVector& vector(std::size_t i) const { return vectors_[i]; }
    const std::vector<SparseVector>& vectors() const { return vectors_; }
    ClassId label(std::size_t i) const { return labels_[i]; }
    const std::vector<ClassId>& labels() const { return labels_; }
    const std::string& class_name(ClassId c) const { return class_names_[c]; }
    const std::vector<std::string>& class_names() const { return class_names_; }

    // ClassId for a label name, or n_classes() if absent.
    ClassId find_class(const std::string& name) const;
    std::size_t class_count(ClassId c) const { return class_counts_[c]; }

private:
    std::vector<SparseVector> vectors_;
    std::vector<ClassId> labels_;
    std::vector<std::string> class_names_;
    std::vector<std::size_t> class_counts_;
    std::size_t dim_ = 0;
};

// Dissimilarity configuration: the exponent and whether the outer 1/p root
// is omitted. Throws on p <= 0 or non-finite p.
struct MetricSpec {
    double p = 2.0;
    bool rootless = false;

    MetricSpec(double p_, bool rootless_);
};

}  // namespace ampd
