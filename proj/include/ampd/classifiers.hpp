// Licensed under the Apache License, Version 2.0.
// http://www.apache.org/licenses/LICENSE-2.0
#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "ampd/neighbours.hpp"
#include "ampd/sparse.hpp"

namespace ampd {

enum class Family { nn, frnn_upper, frnn_lower, frnn_mean };
enum class WeightKind { linear, reciprocal };

std::string family_name(Family f);
Family parse_family(const std::string& name);
std::string weight_kind_name(WeightKind w);
WeightKind parse_weight_kind(const std::string& name);

struct ClassifierSpec {
    Family family;
    std::size_t k;
    WeightKind weights;
    MetricSpec metric;

    ClassifierSpec(Family f, std::size_t k_, WeightKind w, MetricSpec m);
};

// Distance-based weights for the NN vote (the list must be sorted
// ascending). Linear: (d_k - d_i)/(d_k - d_1), degenerating to uniform
// weights when all k distances coincide; reciprocal: 1/max(d_i, 1e-12).
std::vector<double> nn_weights(std::span<const double> distances, WeightKind kind);

// Rank-based FRNN weights; values in [0,1] summing to 1. Linear:
// 2(k+1-i)/(k(k+1)); reciprocal: (1/i)/H_k. Throws for k < 1.
std::vector<double> frnn_weights(std::size_t k, WeightKind kind);

// Per-test-instance, per-class scores. Rows follow the test set, columns
// the training class table.
struct ScoreMatrix {
    std::size_t n_rows = 0;
    std::vector<std::string> class_names;
    std::vector<double> values;  // row-major, n_rows x class_names.size()

    std::size_t n_cols() const { return class_names.size(); }
    double at(std::size_t r, std::size_t c) const { return values[r * n_cols() + c]; }
    double& at(std::size_t r, std::size_t c) { return values[r * n_cols() + c]; }
};

// Single-instance scores per the classifier family. The class is named by
// its training label; unknown classes are rejected, as is an FRNN lower
// approximation on a single-class training set.
double nn_score(const SparseVector& query, const LabeledDataset& train, const std::string& cls,
                const ClassifierSpec& spec);
double frnn_upper(const SparseVector& query, const LabeledDataset& train,
                  const std::string& cls, const ClassifierSpec& spec);
double frnn_lower(const SparseVector& query, const LabeledDataset& train,
                  const std::string& cls, const ClassifierSpec& spec);
double frnn_mean(const SparseVector& query, const LabeledDataset& train, const std::string& cls,
                 const ClassifierSpec& spec);

// Batch scoring over a test set; parallelizes over instances (0 threads =
// hardware count) with results independent of the worker count.
ScoreMatrix score_all(const LabeledDataset& test, const LabeledDataset& train,
                      const ClassifierSpec& spec, std::size_t threads = 0);

// CSV export: header `instance_id,<class_1>,...,<class_c>`, scores with 9
// significant digits.
void write_scores_csv(const ScoreMatrix& scores, std::ostream& out);
ScoreMatrix read_scores_csv(std::istream& in);

// `instance_id,label` rows matching a scores export.
void write_labels_csv(std::span<const std::string> labels, std::ostream& out);
std::vector<std::string> read_labels_csv(std::istream& in);

// Argmax per row, ties toward the lowest class id.
std::vector<ClassId> predict_labels(const ScoreMatrix& scores);

namespace scoring {

// Formula-level helpers shared by the single-instance ops, score_all and
// the sweep harness. Distances are sorted ascending.

// FRNN weight vector for a pool that may hold fewer than k members:
// truncated to `available` and renormalized to sum 1.
std::vector<double> frnn_weights_truncated(std::size_t k, WeightKind kind,
                                           std::size_t available);

double nn_class_mass(const NeighbourList& nbrs, std::span<const double> weights,
                     std::span<const ClassId> labels, ClassId cls);

// sum_i w_i * clamp(1 - d_i/2, 0, 1)
double upper_from_distances(std::span<const double> in_class_distances,
                            std::span<const double> weights);

// sum_i w_i * clamp(d_i/2, 0, 1)
double lower_from_distances(std::span<const double> out_class_distances,
                            std::span<const double> weights);

}  // namespace scoring

}  // namespace ampd
