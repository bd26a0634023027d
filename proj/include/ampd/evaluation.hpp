// Licensed under the Apache License, Version 2.0.
// http://www.apache.org/licenses/LICENSE-2.0
#pragma once

#include <map>
#include <span>
#include <utility>
#include <vector>

#include "ampd/classifiers.hpp"
#include "ampd/sparse.hpp"

namespace ampd {

struct EvaluationResult {
    double auroc = 0.0;
    // Pairwise AUC per unordered class pair (lower id first); auroc is
    // their mean.
    std::map<std::pair<ClassId, ClassId>, double> per_pair;
};

// P(score of a random positive > score of a random negative) + half the
// tie probability, computed exactly with midranks. Throws unless both a
// positive and a negative are present.
double binary_auc(std::span<const double> scores, const std::vector<char>& positives);

// Pairwise-averaged multiclass AUROC (the Hand-Till construction): for
// each unordered pair (i,j), A(i|j) is the binary AUC of the class-i score
// column restricted to instances labeled i or j, and the pair value is
// (A(i|j)+A(j|i))/2. Classes absent from the labels are skipped; fewer
// than two populated classes is an error.
EvaluationResult multiclass_auroc(const ScoreMatrix& scores, std::span<const ClassId> labels);

// One-vs-rest macro average, emitted alongside the pairwise measure.
double ovr_macro_auc(const ScoreMatrix& scores, std::span<const ClassId> labels);

}  // namespace ampd
