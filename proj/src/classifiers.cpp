// Licensed under the Apache License, Version 2.0.
// http://www.apache.org/licenses/LICENSE-2.0

#include "ampd/classifiers.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

#include "ampd/parallel.hpp"

namespace ampd {

std::string family_name(Family f) {
    switch (f) {
        case Family::nn: return "nn";
        case Family::frnn_upper: return "frnn-upper";
        case Family::frnn_lower: return "frnn-lower";
        case Family::frnn_mean: return "frnn-mean";
    }
    return "?";
}

Family parse_family(const std::string& name) {
    if (name == "nn") return Family::nn;
    if (name == "frnn-upper") return Family::frnn_upper;
    if (name == "frnn-lower") return Family::frnn_lower;
    if (name == "frnn-mean") return Family::frnn_mean;
    throw std::invalid_argument("unknown classifier family: '" + name + "'");
}

std::string weight_kind_name(WeightKind w) {
    return w == WeightKind::linear ? "linear" : "reciprocal";
}

WeightKind parse_weight_kind(const std::string& name) {
    if (name == "linear") return WeightKind::linear;
    if (name == "reciprocal") return WeightKind::reciprocal;
    throw std::invalid_argument("unknown weight kind: '" + name + "'");
}

ClassifierSpec::ClassifierSpec(Family f, std::size_t k_, WeightKind w, MetricSpec m)
    : family(f), k(k_), weights(w), metric(m) {
    if (k < 1) throw std::invalid_argument("classifier k must be at least 1");
}

std::vector<double> nn_weights(std::span<const double> distances, WeightKind kind) {
    const std::size_t k = distances.size();
    std::vector<double> w(k);
    if (k == 0) return w;
    if (kind == WeightKind::reciprocal) {
        constexpr double eps = 1e-12;  // exact matches dominate but stay finite
        for (std::size_t i = 0; i < k; ++i)
            w[i] = 1.0 / (distances[i] > eps ? distances[i] : eps);
        return w;
    }
    const double d1 = distances.front(), dk = distances.back();
    if (k == 1 || dk == d1) {
        std::fill(w.begin(), w.end(), 1.0);  // uniform limit of (d_k-d_i)/(d_k-d_1)
        return w;
    }
    for (std::size_t i = 0; i < k; ++i) w[i] = (dk - distances[i]) / (dk - d1);
    return w;
}

std::vector<double> frnn_weights(std::size_t k, WeightKind kind) {
    if (k < 1) throw std::invalid_argument("frnn_weights: k must be at least 1");
    std::vector<double> w(k);
    if (kind == WeightKind::linear) {
        const double denom = static_cast<double>(k) * static_cast<double>(k + 1);
        for (std::size_t i = 1; i <= k; ++i)
            w[i - 1] = 2.0 * static_cast<double>(k + 1 - i) / denom;
    } else {
        double harmonic = 0.0;
        for (std::size_t j = 1; j <= k; ++j) harmonic += 1.0 / static_cast<double>(j);
        for (std::size_t i = 1; i <= k; ++i)
            w[i - 1] = (1.0 / static_cast<double>(i)) / harmonic;
    }
    return w;
}

namespace scoring {

std::vector<double> frnn_weights_truncated(std::size_t k, WeightKind kind,
                                           std::size_t available) {
    std::vector<double> w = frnn_weights(k, kind);
    if (available >= k) return w;
    w.resize(available);
    double sum = 0.0;
    for (double v : w) sum += v;
    for (double& v : w) v /= sum;
    return w;
}

double nn_class_mass(const NeighbourList& nbrs, std::span<const double> weights,
                     std::span<const ClassId> labels, ClassId cls) {
    double hit = 0.0, total = 0.0;
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
        total += weights[i];
        if (labels[nbrs[i].index] == cls) hit += weights[i];
    }
    return hit / total;
}

namespace {
double clamp01(double v) { return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v); }
}  // namespace

double upper_from_distances(std::span<const double> in_class_distances,
                            std::span<const double> weights) {
    double acc = 0.0;
    for (std::size_t i = 0; i < in_class_distances.size(); ++i)
        acc += weights[i] * clamp01(1.0 - in_class_distances[i] / 2.0);
    return acc;
}

double lower_from_distances(std::span<const double> out_class_distances,
                            std::span<const double> weights) {
    double acc = 0.0;
    for (std::size_t i = 0; i < out_class_distances.size(); ++i)
        acc += weights[i] * clamp01(out_class_distances[i] / 2.0);
    return acc;
}

}  // namespace scoring

namespace {

std::vector<double> distances_of(const NeighbourList& l) {
    std::vector<double> d(l.size());
    for (std::size_t i = 0; i < l.size(); ++i) d[i] = l[i].distance;
    return d;
}

ClassId require_class(const LabeledDataset& train, const std::string& cls) {
    const ClassId c = train.find_class(cls);
    if (c == train.n_classes())
        throw std::invalid_argument("class '" + cls + "' is absent from the training data");
    return c;
}

double upper_one(const NeighbourSearcher& s, const NormalizedVector& q, ClassId c,
                 const ClassifierSpec& spec) {
    const NeighbourList l = s.top_k(q, Restrict::in_class, c, spec.k);
    const auto w = scoring::frnn_weights_truncated(spec.k, spec.weights, l.size());
    return scoring::upper_from_distances(distances_of(l), w);
}

double lower_one(const NeighbourSearcher& s, const NormalizedVector& q, ClassId c,
                 const ClassifierSpec& spec) {
    const NeighbourList l = s.top_k(q, Restrict::out_class, c, spec.k);
    const auto w = scoring::frnn_weights_truncated(spec.k, spec.weights, l.size());
    return scoring::lower_from_distances(distances_of(l), w);
}

}  // namespace

double nn_score(const SparseVector& query, const LabeledDataset& train, const std::string& cls,
                const ClassifierSpec& spec) {
    const ClassId c = require_class(train, cls);
    const NeighbourSearcher s(train, spec.metric);
    const NeighbourList l = s.top_k(query, Restrict::all, 0, spec.k);
    const auto w = nn_weights(distances_of(l), spec.weights);
    return scoring::nn_class_mass(l, w, s.labels(), c);
}

double frnn_upper(const SparseVector& query, const LabeledDataset& train,
                  const std::string& cls, const ClassifierSpec& spec) {
    const ClassId c = require_class(train, cls);
    const NeighbourSearcher s(train, spec.metric);
    return upper_one(s, s.normalize_query(query), c, spec);
}

double frnn_lower(const SparseVector& query, const LabeledDataset& train,
                  const std::string& cls, const ClassifierSpec& spec) {
    const ClassId c = require_class(train, cls);
    if (train.n_classes() < 2)
        throw std::invalid_argument("frnn_lower: training set has a single class");
    const NeighbourSearcher s(train, spec.metric);
    return lower_one(s, s.normalize_query(query), c, spec);
}

double frnn_mean(const SparseVector& query, const LabeledDataset& train, const std::string& cls,
                 const ClassifierSpec& spec) {
    const ClassId c = require_class(train, cls);
    if (train.n_classes() < 2)
        throw std::invalid_argument("frnn_mean: training set has a single class");
    const NeighbourSearcher s(train, spec.metric);
    const NormalizedVector q = s.normalize_query(query);
    return 0.5 * (upper_one(s, q, c, spec) + lower_one(s, q, c, spec));
}

ScoreMatrix score_all(const LabeledDataset& test, const LabeledDataset& train,
                      const ClassifierSpec& spec, std::size_t threads) {
    if (test.dim() != train.dim())
        throw std::invalid_argument("score_all: test/train dimension mismatch");
    if (spec.family != Family::nn && spec.family != Family::frnn_upper &&
        train.n_classes() < 2)
        throw std::invalid_argument("score_all: FRNN lower/mean need at least two classes");

    const NeighbourSearcher searcher(train, spec.metric);
    const std::size_t n_classes = train.n_classes();

    ScoreMatrix out;
    out.n_rows = test.size();
    out.class_names = train.class_names();
    out.values.assign(out.n_rows * n_classes, 0.0);

    parallel_for(test.size(), threads, [&](std::size_t r) {
        const NormalizedVector q = searcher.normalize_query(test.vector(r));
        if (spec.family == Family::nn) {
            const NeighbourList l = searcher.top_k(q, Restrict::all, 0, spec.k);
            const auto w = nn_weights(distances_of(l), spec.weights);
            for (ClassId c = 0; c < n_classes; ++c)
                out.at(r, c) = scoring::nn_class_mass(l, w, searcher.labels(), c);
            return;
        }
        // FRNN: one whole-set pass gives every in-class list; out-of-class
        // lists come from merging the other classes' lists.
        const auto per_class = searcher.per_class_top_k(q, spec.k);
        for (ClassId c = 0; c < n_classes; ++c) {
            double upper = 0.0, lower = 0.0;
            if (spec.family != Family::frnn_lower) {
                const auto& l = per_class[c];
                const auto w = scoring::frnn_weights_truncated(spec.k, spec.weights, l.size());
                upper = scoring::upper_from_distances(distances_of(l), w);
            }
            if (spec.family != Family::frnn_upper) {
                std::vector<const NeighbourList*> others;
                others.reserve(n_classes - 1);
                for (ClassId o = 0; o < n_classes; ++o)
                    if (o != c) others.push_back(&per_class[o]);
                const NeighbourList l = merge_k_smallest(others, spec.k);
                const auto w = scoring::frnn_weights_truncated(spec.k, spec.weights, l.size());
                lower = scoring::lower_from_distances(distances_of(l), w);
            }
            switch (spec.family) {
                case Family::frnn_upper: out.at(r, c) = upper; break;
                case Family::frnn_lower: out.at(r, c) = lower; break;
                default: out.at(r, c) = 0.5 * (upper + lower); break;
            }
        }
    });
    return out;
}

void write_scores_csv(const ScoreMatrix& scores, std::ostream& out) {
    out << "instance_id";
    for (const auto& name : scores.class_names) out << ',' << name;
    out << '\n';
    char buf[64];
    for (std::size_t r = 0; r < scores.n_rows; ++r) {
        out << r;
        for (std::size_t c = 0; c < scores.n_cols(); ++c) {
            std::snprintf(buf, sizeof buf, "%.9g", scores.at(r, c));
            out << ',' << buf;
        }
        out << '\n';
    }
}

ScoreMatrix read_scores_csv(std::istream& in) {
    auto split = [](const std::string& line) {
        std::vector<std::string> f;
        std::size_t start = 0;
        while (true) {
            const std::size_t pos = line.find(',', start);
            f.push_back(line.substr(start, pos - start));
            if (pos == std::string::npos) break;
            start = pos + 1;
        }
        return f;
    };

    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("scores csv: empty file");
    auto header = split(line);
    if (header.size() < 2 || header[0] != "instance_id")
        throw std::runtime_error("scores csv: bad header");

    ScoreMatrix out;
    out.class_names.assign(header.begin() + 1, header.end());
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto f = split(line);
        if (f.size() != header.size())
            throw std::runtime_error("scores csv line " + std::to_string(lineno) +
                                     ": field count mismatch");
        for (std::size_t c = 1; c < f.size(); ++c) out.values.push_back(std::stod(f[c]));
        ++out.n_rows;
    }
    if (out.n_rows == 0) throw std::runtime_error("scores csv: no rows");
    return out;
}

void write_labels_csv(std::span<const std::string> labels, std::ostream& out) {
    out << "instance_id,label\n";
    for (std::size_t r = 0; r < labels.size(); ++r) out << r << ',' << labels[r] << '\n';
}

std::vector<std::string> read_labels_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != "instance_id,label")
        throw std::runtime_error("labels csv: expected header 'instance_id,label'");
    std::vector<std::string> labels;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const std::size_t pos = line.find(',');
        if (pos == std::string::npos)
            throw std::runtime_error("labels csv line " + std::to_string(lineno) +
                                     ": expected two fields");
        labels.push_back(line.substr(pos + 1));
    }
    if (labels.empty()) throw std::runtime_error("labels csv: no rows");
    return labels;
}

std::vector<ClassId> predict_labels(const ScoreMatrix& scores) {
    std::vector<ClassId> out(scores.n_rows);
    for (std::size_t r = 0; r < scores.n_rows; ++r) {
        ClassId best = 0;
        for (ClassId c = 1; c < scores.n_cols(); ++c)
            if (scores.at(r, c) > scores.at(r, best)) best = c;
        out[r] = best;
    }
    return out;
}

}  // namespace ampd
