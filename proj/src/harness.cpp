// Licensed under the Apache License, Version 2.0.
// http://www.apache.org/licenses/LICENSE-2.0

#include "ampd/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "ampd/evaluation.hpp"
#include "ampd/parallel.hpp"

namespace ampd {
namespace {

using Clock = std::chrono::steady_clock;

std::int64_t ms_since(Clock::time_point t0) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
}

struct Cell {
    bool rootless;
    std::size_t k;
    Family family;
    WeightKind weights;
};

std::string cell_id(const Cell& c, double p, std::size_t m) {
    std::ostringstream ss;
    ss << "family=" << family_name(c.family) << ",weights=" << weight_kind_name(c.weights)
       << ",rootless=" << (c.rootless ? "true" : "false") << ",p=" << p << ",m=" << m
       << ",k=" << c.k;
    return ss.str();
}

std::vector<double> distances_of(const NeighbourList& l) {
    std::vector<double> d(l.size());
    for (std::size_t i = 0; i < l.size(); ++i) d[i] = l[i].distance;
    return d;
}

// Per-query neighbourhoods shared by every cell at one (m, p, rootless):
// distance lists at k_max; smaller k are prefixes.
struct QueryView {
    std::vector<std::vector<double>> in_class;   // per class
    std::vector<std::vector<double>> out_class;  // per class (empty if unused)
    std::vector<double> global;                  // whole-set distances
    std::vector<ClassId> global_labels;          // classes of the whole-set list
};

}  // namespace

SweepConfig SweepConfig::defaults() {
    SweepConfig c;
    for (int i = 1; i <= 40; ++i) c.p_grid.push_back(static_cast<double>(i) / 10.0);
    for (std::size_t m = 2; m <= 4096; m *= 2) c.m_grid.push_back(m);
    for (std::size_t k = 1; k <= 256; k *= 2) c.k_grid.push_back(k);
    c.families = {Family::nn, Family::frnn_upper, Family::frnn_lower, Family::frnn_mean};
    c.weight_kinds = {WeightKind::linear, WeightKind::reciprocal};
    c.rootless_options = {false, true};
    return c;
}

SweepConfig load_sweep_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("unreadable config: " + path.string());
    nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
    if (j.is_discarded() || !j.is_object())
        throw std::runtime_error("malformed config: " + path.string());

    static const char* known[] = {"p_grid", "m_grid",  "k_grid", "families",
                                  "weight_kinds", "rootless", "threads"};
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (std::find_if(std::begin(known), std::end(known),
                         [&](const char* k) { return key == k; }) == std::end(known))
            throw std::runtime_error("unknown config key: '" + key + "'");
    }

    SweepConfig c = SweepConfig::defaults();
    if (j.contains("p_grid")) {
        c.p_grid = j["p_grid"].get<std::vector<double>>();
        for (double p : c.p_grid)
            if (!(p > 0.0)) throw std::runtime_error("config p_grid: p must be positive");
    }
    if (j.contains("m_grid")) {
        c.m_grid = j["m_grid"].get<std::vector<std::size_t>>();
        for (std::size_t m : c.m_grid)
            if (m < 1) throw std::runtime_error("config m_grid: m must be at least 1");
    }
    if (j.contains("k_grid")) {
        c.k_grid = j["k_grid"].get<std::vector<std::size_t>>();
        for (std::size_t k : c.k_grid)
            if (k < 1) throw std::runtime_error("config k_grid: k must be at least 1");
    }
    if (j.contains("families")) {
        c.families.clear();
        for (const auto& f : j["families"]) c.families.push_back(parse_family(f.get<std::string>()));
    }
    if (j.contains("weight_kinds")) {
        c.weight_kinds.clear();
        for (const auto& w : j["weight_kinds"])
            c.weight_kinds.push_back(parse_weight_kind(w.get<std::string>()));
    }
    if (j.contains("rootless")) c.rootless_options = j["rootless"].get<std::vector<bool>>();
    if (j.contains("threads")) c.threads = j["threads"].get<std::size_t>();

    if (c.p_grid.empty() || c.m_grid.empty() || c.k_grid.empty() || c.families.empty() ||
        c.weight_kinds.empty() || c.rootless_options.empty())
        throw std::runtime_error("config: every grid must be non-empty");
    return c;
}

void write_results_header(std::ostream& out) {
    out << "family,weights,rootless,p,m,k,auroc,auroc_ovr,n_train,n_test,wall_ms\n";
}

void write_results_row(std::ostream& out, const SweepRow& r) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.1f", r.p);
    out << family_name(r.family) << ',' << weight_kind_name(r.weights) << ','
        << (r.rootless ? "true" : "false") << ',' << buf << ',' << r.m << ',' << r.k << ',';
    std::snprintf(buf, sizeof buf, "%.6f,%.6f", r.auroc, r.auroc_ovr);
    out << buf << ',' << r.n_train << ',' << r.n_test << ',' << r.wall_ms << '\n';
}

std::vector<SweepRow> read_results_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("unreadable results file: " + path.string());
    std::string line;
    if (!std::getline(in, line) ||
        line != "family,weights,rootless,p,m,k,auroc,auroc_ovr,n_train,n_test,wall_ms")
        throw std::runtime_error("not a results csv: " + path.string());

    std::vector<SweepRow> rows;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> f;
        std::size_t start = 0;
        while (true) {
            const std::size_t pos = line.find(',', start);
            f.push_back(line.substr(start, pos - start));
            if (pos == std::string::npos) break;
            start = pos + 1;
        }
        if (f.size() != 11)
            throw std::runtime_error(path.string() + ":" + std::to_string(lineno) +
                                     ": expected 11 fields");
        SweepRow r;
        r.family = parse_family(f[0]);
        r.weights = parse_weight_kind(f[1]);
        if (f[2] != "true" && f[2] != "false")
            throw std::runtime_error(path.string() + ":" + std::to_string(lineno) +
                                     ": bad rootless flag");
        r.rootless = f[2] == "true";
        r.p = std::stod(f[3]);
        r.m = std::stoull(f[4]);
        r.k = std::stoull(f[5]);
        r.auroc = std::stod(f[6]);
        r.auroc_ovr = std::stod(f[7]);
        r.n_train = std::stoull(f[8]);
        r.n_test = std::stoull(f[9]);
        r.wall_ms = std::stoll(f[10]);
        rows.push_back(r);
    }
    return rows;
}

std::vector<SweepRow> run_sweep(const IngestedDataset& data, const SweepConfig& config,
                                const RowSink& sink) {
    if (config.p_grid.empty() || config.m_grid.empty() || config.k_grid.empty() ||
        config.families.empty() || config.weight_kinds.empty() ||
        config.rootless_options.empty())
        throw std::invalid_argument("run_sweep: every grid must be non-empty");

    const std::size_t k_max = *std::max_element(config.k_grid.begin(), config.k_grid.end());
    const bool want_nn =
        std::find(config.families.begin(), config.families.end(), Family::nn) !=
        config.families.end();
    const bool want_upper =
        std::find_if(config.families.begin(), config.families.end(), [](Family f) {
            return f == Family::frnn_upper || f == Family::frnn_mean;
        }) != config.families.end();
    const bool want_lower =
        std::find_if(config.families.begin(), config.families.end(), [](Family f) {
            return f == Family::frnn_lower || f == Family::frnn_mean;
        }) != config.families.end();

    // Emission order within (m, p): rootless, k, family, weights.
    std::vector<Cell> cells;
    for (bool rl : config.rootless_options)
        for (std::size_t k : config.k_grid)
            for (Family f : config.families)
                for (WeightKind w : config.weight_kinds) cells.push_back({rl, k, f, w});

    // Rank-based weight tables shared across all queries.
    std::map<std::pair<std::size_t, WeightKind>, std::vector<double>> frnn_w;
    for (std::size_t k : config.k_grid)
        for (WeightKind w : config.weight_kinds)
            frnn_w.emplace(std::make_pair(k, w), frnn_weights(k, w));

    auto frnn_score = [&](const std::vector<double>& d, std::size_t k, WeightKind kind,
                          bool upper) {
        const std::size_t n = d.size() < k ? d.size() : k;
        std::span<const double> dd(d.data(), n);
        if (n == k) {
            const auto& w = frnn_w.at({k, kind});
            return upper ? scoring::upper_from_distances(dd, w)
                         : scoring::lower_from_distances(dd, w);
        }
        const auto w = scoring::frnn_weights_truncated(k, kind, n);
        return upper ? scoring::upper_from_distances(dd, w)
                     : scoring::lower_from_distances(dd, w);
    };

    std::vector<SweepRow> rows;
    for (std::size_t m : config.m_grid) {
        const Vocabulary vocab = build_vocabulary(data.train, m);
        const LabeledDataset train = vectorize(data.train, vocab);
        const LabeledDataset test = vectorize(data.test, vocab);
        const std::size_t n_classes = train.n_classes();
        if (want_lower && n_classes < 2)
            throw std::runtime_error(
                "run_sweep: FRNN lower/mean need at least two training classes");

        // Map test labels into the training class table for evaluation.
        std::vector<ClassId> test_labels(test.size());
        for (std::size_t r = 0; r < test.size(); ++r) {
            const ClassId c = train.find_class(test.class_name(test.label(r)));
            if (c == n_classes)
                throw std::runtime_error("run_sweep: test label '" +
                                         test.class_name(test.label(r)) +
                                         "' is absent from the training split");
            test_labels[r] = c;
        }

        for (double p : config.p_grid) {
            const Clock::time_point t_pass = Clock::now();
            // Normalization is shared per (dataset, p); neighbour lists
            // are computed per rootless option so every cell scores under
            // exactly its own metric.
            const auto norm_train =
                std::make_shared<const NormalizedDataset>(p_normalize_dataset(train, p));
            std::vector<NeighbourSearcher> searchers;
            searchers.reserve(config.rootless_options.size());
            for (bool rl : config.rootless_options)
                searchers.emplace_back(norm_train, train, MetricSpec(p, rl));

            std::vector<std::vector<double>> mats(
                cells.size(), std::vector<double>(test.size() * n_classes, 0.0));

            parallel_for(test.size(), config.threads, [&](std::size_t r) {
                const NormalizedVector q = p_normalize(test.vector(r), p);

                // One QueryView per rootless option, in option order.
                std::vector<QueryView> views(config.rootless_options.size());
                for (std::size_t vi = 0; vi < views.size(); ++vi) {
                    const NeighbourSearcher& searcher = searchers[vi];
                    const auto per_class = searcher.per_class_top_k(q, k_max);
                    QueryView& view = views[vi];
                    if (want_upper || want_lower) {
                        view.in_class.resize(n_classes);
                        for (ClassId c = 0; c < n_classes; ++c)
                            view.in_class[c] = distances_of(per_class[c]);
                    }
                    if (want_lower) {
                        view.out_class.resize(n_classes);
                        for (ClassId c = 0; c < n_classes; ++c) {
                            std::vector<const NeighbourList*> others;
                            others.reserve(n_classes - 1);
                            for (ClassId o = 0; o < n_classes; ++o)
                                if (o != c) others.push_back(&per_class[o]);
                            view.out_class[c] = distances_of(merge_k_smallest(others, k_max));
                        }
                    }
                    if (want_nn) {
                        std::vector<const NeighbourList*> all;
                        all.reserve(n_classes);
                        for (const auto& l : per_class) all.push_back(&l);
                        const NeighbourList merged = merge_k_smallest(all, k_max);
                        view.global = distances_of(merged);
                        view.global_labels.resize(merged.size());
                        for (std::size_t i = 0; i < merged.size(); ++i)
                            view.global_labels[i] = searcher.label(merged[i].index);
                    }
                }

                for (std::size_t ci = 0; ci < cells.size(); ++ci) {
                    const Cell& cell = cells[ci];
                    std::size_t vi = 0;
                    while (config.rootless_options[vi] != cell.rootless) ++vi;
                    const QueryView& view = views[vi];
                    double* row = mats[ci].data() + r * n_classes;

                    if (cell.family == Family::nn) {
                        const std::size_t n =
                            view.global.size() < cell.k ? view.global.size() : cell.k;
                        const auto w = nn_weights({view.global.data(), n}, cell.weights);
                        double total = 0.0;
                        for (double v : w) total += v;
                        for (std::size_t i = 0; i < n; ++i)
                            row[view.global_labels[i]] += w[i];
                        for (ClassId c = 0; c < n_classes; ++c) row[c] /= total;
                        continue;
                    }
                    for (ClassId c = 0; c < n_classes; ++c) {
                        double upper = 0.0, lower = 0.0;
                        if (cell.family != Family::frnn_lower)
                            upper = frnn_score(view.in_class[c], cell.k, cell.weights, true);
                        if (cell.family != Family::frnn_upper)
                            lower = frnn_score(view.out_class[c], cell.k, cell.weights, false);
                        switch (cell.family) {
                            case Family::frnn_upper: row[c] = upper; break;
                            case Family::frnn_lower: row[c] = lower; break;
                            default: row[c] = 0.5 * (upper + lower); break;
                        }
                    }
                }
            });

            const std::int64_t pass_share = ms_since(t_pass) / static_cast<std::int64_t>(cells.size());

            for (std::size_t ci = 0; ci < cells.size(); ++ci) {
                const Cell& cell = cells[ci];
                const Clock::time_point t_cell = Clock::now();
                SweepRow row;
                try {
                    ScoreMatrix sm;
                    sm.n_rows = test.size();
                    sm.class_names = train.class_names();
                    sm.values = std::move(mats[ci]);
                    const EvaluationResult ev = multiclass_auroc(sm, test_labels);
                    row = {cell.family,
                           cell.weights,
                           cell.rootless,
                           p,
                           m,
                           cell.k,
                           ev.auroc,
                           ovr_macro_auc(sm, test_labels),
                           train.size(),
                           test.size(),
                           pass_share + ms_since(t_cell)};
                } catch (const std::exception& e) {
                    throw std::runtime_error("sweep cell " + cell_id(cell, p, m) +
                                             " failed: " + e.what());
                }
                rows.push_back(row);
                if (sink) sink(row);
            }
        }
    }
    return rows;
}

std::vector<BestCell> best_cells(std::span<const SweepRow> rows, const BestCellFix& fix) {
    std::map<Family, const SweepRow*> best;
    std::vector<Family> seen;
    for (const auto& r : rows) {
        if (std::find(seen.begin(), seen.end(), r.family) == seen.end())
            seen.push_back(r.family);
        if (r.weights != fix.weights || r.k != fix.k || r.m != fix.m ||
            r.rootless != fix.rootless)
            continue;
        auto [it, inserted] = best.emplace(r.family, &r);
        if (!inserted) {
            const SweepRow* cur = it->second;
            if (r.auroc > cur->auroc || (r.auroc == cur->auroc && r.p < cur->p))
                it->second = &r;
        }
    }

    std::string missing;
    for (Family f : seen) {
        if (best.count(f)) continue;
        if (!missing.empty()) missing += "; ";
        missing += "family=" + family_name(f) + ",weights=" + weight_kind_name(fix.weights) +
                   ",rootless=" + (fix.rootless ? std::string("true") : std::string("false")) +
                   ",m=" + std::to_string(fix.m) + ",k=" + std::to_string(fix.k);
    }
    if (best.empty() || !missing.empty())
        throw std::invalid_argument("best_cells: missing slice cells: " +
                                    (missing.empty() ? "(no rows)" : missing));

    static const Family order[] = {Family::nn, Family::frnn_upper, Family::frnn_lower,
                                   Family::frnn_mean};
    std::vector<BestCell> out;
    for (Family f : order)
        if (best.count(f))
            out.push_back({f, best[f]->p, best[f]->auroc});
    return out;
}

}  // namespace ampd
