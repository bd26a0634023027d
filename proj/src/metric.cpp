// Licensed under the Apache License, Version 2.0.
// http://www.apache.org/licenses/LICENSE-2.0

#include "ampd/metric.hpp"

#include <cmath>
#include <stdexcept>

#include "ampd/kernels.hpp"

namespace ampd {
namespace {

void check_p(double p) {
    if (!(p > 0.0) || !std::isfinite(p))
        throw std::invalid_argument("metric exponent p must be a positive real");
}

struct PairScratch {
    std::vector<double> xs;
    std::vector<double> ys;
};

PairScratch& scratch() {
    thread_local PairScratch s;
    return s;
}

// Merge-join over the common support. Collects matched value pairs for the
// difference kernel and accumulates the matched powered mass on the fly.
std::size_t gather_common(const NormalizedVector& x, const NormalizedVector& y,
                          PairScratch& s, double& matched_pow) {
    s.xs.clear();
    s.ys.clear();
    double acc = 0.0;
    std::size_t i = 0, j = 0;
    const std::size_t nx = x.ids.size(), ny = y.ids.size();
    while (i < nx && j < ny) {
        const TermId a = x.ids[i], b = y.ids[j];
        if (a < b) {
            ++i;
        } else if (b < a) {
            ++j;
        } else {
            s.xs.push_back(x.values[i]);
            s.ys.push_back(y.values[j]);
            acc += x.powered[i] + y.powered[j];
            ++i;
            ++j;
        }
    }
    matched_pow = acc;
    return s.xs.size();
}

}  // namespace

namespace detail {

double apply_root(double rootless_value, double p) {
    if (p == 1.0) return rootless_value;
    if (p == 2.0) return std::sqrt(rootless_value);
    return rootless_value == 0.0 ? 0.0 : std::pow(rootless_value, 1.0 / p);
}

}  // namespace detail

double rootless_p_size(const SparseVector& v, double p) {
    check_p(p);
    return kernels::ops().sum_abs_pow(v.values.data(), v.values.size(), p);
}

double p_size(const SparseVector& v, double p) {
    check_p(p);
    if (v.is_zero()) return 0.0;
    return detail::apply_root(rootless_p_size(v, p), p);
}

NormalizedVector p_normalize(const SparseVector& v, double p) {
    check_p(p);
    NormalizedVector out;
    out.ids = v.ids;
    out.dim = v.dim;
    out.p = p;
    const std::size_t n = v.values.size();
    out.powered.resize(n);
    if (n == 0) return out;

    const auto& k = kernels::ops();
    // raw |v_i|^p and their total; (v_i/size)^p == |v_i|^p / total.
    const double total = k.abs_pow_sum(v.values.data(), out.powered.data(), n, p);
    const double size = detail::apply_root(total, p);
    out.values = v.values;
    k.scale(out.values.data(), n, 1.0 / size);
    k.scale(out.powered.data(), n, 1.0 / total);
    return out;
}

double angular_distance(const SparseVector& x, const SparseVector& y, const MetricSpec& spec) {
    if (x.dim != y.dim)
        throw std::invalid_argument("angular_distance: dimension mismatch");
    if (x.is_zero() || y.is_zero()) {
        if (x.is_zero() && y.is_zero()) return 0.0;
        return 1.0;  // pinned zero-vector convention, both flags
    }

    const NormalizedVector nx = p_normalize(x, spec.p);
    const NormalizedVector ny = p_normalize(y, spec.p);

    // Union merge of the normalized entries; absent coordinates are zero.
    std::vector<double> diffs;
    diffs.reserve(nx.ids.size() + ny.ids.size());
    std::size_t i = 0, j = 0;
    while (i < nx.ids.size() && j < ny.ids.size()) {
        const TermId a = nx.ids[i], b = ny.ids[j];
        if (a < b)
            diffs.push_back(nx.values[i++]);
        else if (b < a)
            diffs.push_back(ny.values[j++]);
        else {
            diffs.push_back(nx.values[i++] - ny.values[j++]);
        }
    }
    for (; i < nx.ids.size(); ++i) diffs.push_back(nx.values[i]);
    for (; j < ny.ids.size(); ++j) diffs.push_back(ny.values[j]);

    const double inner =
        kernels::ops().sum_abs_pow(diffs.data(), diffs.size(), spec.p);
    return spec.rootless ? inner : detail::apply_root(inner, spec.p);
}

double cosine_dissimilarity(const SparseVector& x, const SparseVector& y) {
    if (x.dim != y.dim)
        throw std::invalid_argument("cosine_dissimilarity: dimension mismatch");
    if (x.is_zero() || y.is_zero())
        throw std::invalid_argument("cosine_dissimilarity: undefined for the zero vector");

    const auto& k = kernels::ops();
    PairScratch& s = scratch();
    s.xs.clear();
    s.ys.clear();
    std::size_t i = 0, j = 0;
    while (i < x.ids.size() && j < y.ids.size()) {
        const TermId a = x.ids[i], b = y.ids[j];
        if (a < b)
            ++i;
        else if (b < a)
            ++j;
        else {
            s.xs.push_back(x.values[i++]);
            s.ys.push_back(y.values[j++]);
        }
    }
    const double num = k.dot(s.xs.data(), s.ys.data(), s.xs.size());
    const double nx = std::sqrt(k.sum_abs_pow(x.values.data(), x.values.size(), 2.0));
    const double ny = std::sqrt(k.sum_abs_pow(y.values.data(), y.values.size(), 2.0));
    const double val = 1.0 - num / (nx * ny);
    return val < 0.0 ? 0.0 : val;
}

double angular_distance_sparse_fast(const NormalizedVector& x, const NormalizedVector& y,
                                    const MetricSpec& spec) {
    if (x.p != spec.p || y.p != spec.p)
        throw std::invalid_argument(
            "angular_distance_sparse_fast: arguments normalized under a different p");
    if (x.dim != y.dim)
        throw std::invalid_argument("angular_distance_sparse_fast: dimension mismatch");
    if (x.is_zero() || y.is_zero()) {
        if (x.is_zero() && y.is_zero()) return 0.0;
        return 1.0;
    }

    PairScratch& s = scratch();
    double matched_pow = 0.0;
    const std::size_t n = gather_common(x, y, s, matched_pow);

    double inner = 2.0 - matched_pow;
    if (n != 0)
        inner += kernels::ops().sum_abs_diff_pow(s.xs.data(), s.ys.data(), n, spec.p);
    if (inner < 0.0) inner = 0.0;  // cancellation guard at identical directions
    return spec.rootless ? inner : detail::apply_root(inner, spec.p);
}

NormalizedDataset p_normalize_dataset(const LabeledDataset& ds, double p) {
    NormalizedDataset out;
    out.p = p;
    out.dim = ds.dim();
    out.items.reserve(ds.size());
    for (const auto& v : ds.vectors()) out.items.push_back(p_normalize(v, p));
    return out;
}

}  // namespace ampd
