// Licensed under the Apache License, Version 2.0.
// http://www.apache.org/licenses/LICENSE-2.0

#include "ampd/evaluation.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace ampd {

double binary_auc(std::span<const double> scores, const std::vector<char>& positives) {
    if (scores.size() != positives.size())
        throw std::invalid_argument("binary_auc: scores/labels length mismatch");
    const std::size_t n = scores.size();
    std::size_t n_pos = 0;
    for (char c : positives) n_pos += c ? 1 : 0;
    const std::size_t n_neg = n - n_pos;
    if (n_pos == 0 || n_neg == 0)
        throw std::invalid_argument("binary_auc: needs at least one positive and one negative");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

    // Midranks over tie groups; the rank sum of the positives gives the
    // Mann-Whitney statistic exactly.
    double rank_sum_pos = 0.0;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j < n && scores[order[j]] == scores[order[i]]) ++j;
        const double midrank = 0.5 * static_cast<double>(i + 1 + j);  // ranks are 1-based
        for (std::size_t t = i; t < j; ++t)
            if (positives[order[t]]) rank_sum_pos += midrank;
        i = j;
    }
    const double u = rank_sum_pos -
                     0.5 * static_cast<double>(n_pos) * static_cast<double>(n_pos + 1);
    return u / (static_cast<double>(n_pos) * static_cast<double>(n_neg));
}

namespace {

// A(i|j): AUC of the class-i column over instances labeled i or j.
double one_vs_one(const ScoreMatrix& scores, std::span<const ClassId> labels, ClassId i,
                  ClassId j) {
    std::vector<double> s;
    std::vector<char> pos;
    for (std::size_t r = 0; r < scores.n_rows; ++r) {
        if (labels[r] != i && labels[r] != j) continue;
        s.push_back(scores.at(r, i));
        pos.push_back(labels[r] == i ? 1 : 0);
    }
    return binary_auc(s, pos);
}

}  // namespace

EvaluationResult multiclass_auroc(const ScoreMatrix& scores, std::span<const ClassId> labels) {
    if (labels.size() != scores.n_rows)
        throw std::invalid_argument("multiclass_auroc: labels/rows length mismatch");

    std::vector<std::size_t> counts(scores.n_cols(), 0);
    for (ClassId l : labels) {
        if (l >= scores.n_cols())
            throw std::invalid_argument("multiclass_auroc: label outside the score matrix");
        ++counts[l];
    }
    std::vector<ClassId> populated;
    for (ClassId c = 0; c < scores.n_cols(); ++c)
        if (counts[c] > 0) populated.push_back(c);
    if (populated.size() < 2)
        throw std::invalid_argument("multiclass_auroc: needs at least two populated classes");

    EvaluationResult out;
    double total = 0.0;
    for (std::size_t a = 0; a < populated.size(); ++a) {
        for (std::size_t b = a + 1; b < populated.size(); ++b) {
            const ClassId i = populated[a], j = populated[b];
            const double pair_auc =
                0.5 * (one_vs_one(scores, labels, i, j) + one_vs_one(scores, labels, j, i));
            out.per_pair.emplace(std::make_pair(i, j), pair_auc);
            total += pair_auc;
        }
    }
    out.auroc = total / static_cast<double>(out.per_pair.size());
    return out;
}

double ovr_macro_auc(const ScoreMatrix& scores, std::span<const ClassId> labels) {
    if (labels.size() != scores.n_rows)
        throw std::invalid_argument("ovr_macro_auc: labels/rows length mismatch");
    double total = 0.0;
    std::size_t used = 0;
    for (ClassId c = 0; c < scores.n_cols(); ++c) {
        std::vector<double> s;
        std::vector<char> pos;
        s.reserve(scores.n_rows);
        pos.reserve(scores.n_rows);
        std::size_t n_pos = 0;
        for (std::size_t r = 0; r < scores.n_rows; ++r) {
            s.push_back(scores.at(r, c));
            const bool p = labels[r] == c;
            pos.push_back(p ? 1 : 0);
            n_pos += p ? 1 : 0;
        }
        if (n_pos == 0 || n_pos == scores.n_rows) continue;  // class unpopulated either way
        total += binary_auc(s, pos);
        ++used;
    }
    if (used == 0)
        throw std::invalid_argument("ovr_macro_auc: needs at least two populated classes");
    return total / static_cast<double>(used);
}

}  // namespace ampd
