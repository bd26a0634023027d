// Licensed under the Apache License, Version 2.0.
// http://www.apache.org/licenses/LICENSE-2.0
//
// Test-only reference implementations: dense loops and std::pow all the
// way down, kept deliberately independent of the library's sparse fast
// paths and kernel backends.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "ampd/sparse.hpp"

namespace oracle {

inline double pow_abs(double v, double p) {
    v = std::fabs(v);
    return v == 0.0 ? 0.0 : std::pow(v, p);
}

inline bool is_zero(const std::vector<double>& v) {
    for (double x : v)
        if (x != 0.0) return false;
    return true;
}

inline std::vector<double> normalize_dense(std::vector<double> v, double p) {
    double total = 0.0;
    for (double x : v) total += pow_abs(x, p);
    if (total == 0.0) return v;  // zero vector maps to itself
    const double size = std::pow(total, 1.0 / p);
    for (double& x : v) x /= size;
    return v;
}

// Eq-4/5 style evaluation on dense arrays, with the pinned zero-vector
// conventions (0 vs 0 -> 0, 0 vs anything -> 1).
inline double angular_dense(const std::vector<double>& x, const std::vector<double>& y,
                            double p, bool rootless) {
    if (is_zero(x) || is_zero(y)) return (is_zero(x) && is_zero(y)) ? 0.0 : 1.0;
    const std::vector<double> nx = normalize_dense(x, p);
    const std::vector<double> ny = normalize_dense(y, p);
    double inner = 0.0;
    for (std::size_t i = 0; i < nx.size(); ++i) inner += pow_abs(nx[i] - ny[i], p);
    return rootless ? inner : std::pow(inner, 1.0 / p);
}

inline double cosine_dense(const std::vector<double>& x, const std::vector<double>& y) {
    double dot = 0.0, sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        dot += x[i] * y[i];
        sx += x[i] * x[i];
        sy += y[i] * y[i];
    }
    return 1.0 - dot / (std::sqrt(sx) * std::sqrt(sy));
}

// Exhaustive positive/negative pair counting with half credit for ties.
inline double auc_pair_counting(const std::vector<double>& scores,
                                const std::vector<char>& positives) {
    double wins = 0.0;
    std::size_t n_pos = 0, n_neg = 0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (!positives[i]) continue;
        ++n_pos;
        for (std::size_t j = 0; j < scores.size(); ++j) {
            if (positives[j]) continue;
            if (scores[i] > scores[j])
                wins += 1.0;
            else if (scores[i] == scores[j])
                wins += 0.5;
        }
    }
    for (char c : positives) n_neg += c ? 0 : 1;
    return wins / (static_cast<double>(n_pos) * static_cast<double>(n_neg));
}

// Pairwise-averaged multiclass AUC built directly from pair counting.
// scores is row-major n x c, labels hold column indexes.
inline double hand_till_pair_counting(const std::vector<double>& scores, std::size_t n_cols,
                                      const std::vector<std::uint32_t>& labels) {
    const std::size_t n = labels.size();
    std::vector<std::size_t> counts(n_cols, 0);
    for (auto l : labels) ++counts[l];

    double total = 0.0;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < n_cols; ++i) {
        if (counts[i] == 0) continue;
        for (std::size_t j = i + 1; j < n_cols; ++j) {
            if (counts[j] == 0) continue;
            auto one = [&](std::size_t pos_cls, std::size_t neg_cls) {
                std::vector<double> s;
                std::vector<char> pos;
                for (std::size_t r = 0; r < n; ++r) {
                    if (labels[r] != pos_cls && labels[r] != neg_cls) continue;
                    s.push_back(scores[r * n_cols + pos_cls]);
                    pos.push_back(labels[r] == pos_cls ? 1 : 0);
                }
                return auc_pair_counting(s, pos);
            };
            total += 0.5 * (one(i, j) + one(j, i));
            ++pairs;
        }
    }
    return total / static_cast<double>(pairs);
}

// Deterministic generator built on the standard-specified mt19937 stream.
struct Rng {
    std::mt19937 gen;

    explicit Rng(std::uint32_t seed) : gen(seed) {}

    double uniform(double lo, double hi) {
        const double u = static_cast<double>(gen()) / 4294967296.0;
        return lo + u * (hi - lo);
    }
    std::size_t index(std::size_t n) { return static_cast<std::size_t>(gen() % n); }

    // Sparse nonnegative vector with continuous values; share_zero gives a
    // chance of producing the zero vector.
    ampd::SparseVector sparse(std::size_t dim, std::size_t max_nnz, double zero_share = 0.0) {
        std::vector<double> dense(dim, 0.0);
        if (zero_share > 0.0 && uniform(0.0, 1.0) < zero_share)
            return ampd::make_sparse(dense);
        const std::size_t nnz = 1 + index(max_nnz);
        for (std::size_t t = 0; t < nnz; ++t) dense[index(dim)] = uniform(0.05, 10.0);
        return ampd::make_sparse(dense);
    }

    // Integer count vector (small counts make exact distance ties likely).
    ampd::SparseVector counts(std::size_t dim, std::size_t max_nnz) {
        std::vector<double> dense(dim, 0.0);
        const std::size_t nnz = 1 + index(max_nnz);
        for (std::size_t t = 0; t < nnz; ++t)
            dense[index(dim)] = static_cast<double>(1 + index(4));
        return ampd::make_sparse(dense);
    }
};

}  // namespace oracle
