// Licensed under the Apache License, Version 2.0.
// http://www.apache.org/licenses/LICENSE-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "ampd/classifiers.hpp"
#include "ampd/corpus.hpp"

namespace ampd {

// Grid sweep over (m, p, rootless, k, family, weights). Omitted CONFIG
// keys fall back to these defaults: p over all multiples of 0.1 in
// [0.1, 4.0], m over powers of 2 in [2, 4096], k over powers of 2 in
// [1, 256], every family, both weight kinds, rooted and rootless.
struct SweepConfig {
    std::vector<double> p_grid;
    std::vector<std::size_t> m_grid;
    std::vector<std::size_t> k_grid;
    std::vector<Family> families;
    std::vector<WeightKind> weight_kinds;
    std::vector<bool> rootless_options;
    std::size_t threads = 0;  // 0 = hardware concurrency

    static SweepConfig defaults();
};

// Strict CONFIG.json parse: exactly the keys p_grid, m_grid, k_grid,
// families, weight_kinds, rootless, threads are recognized; anything else
// is an error.
SweepConfig load_sweep_config(const std::filesystem::path& path);

struct SweepRow {
    Family family;
    WeightKind weights;
    bool rootless;
    double p;
    std::size_t m;
    std::size_t k;
    double auroc;
    double auroc_ovr;
    std::size_t n_train;
    std::size_t n_test;
    std::int64_t wall_ms;
};

// results.csv layout (bit-exact header; p with one decimal, aurocs with
// six).
void write_results_header(std::ostream& out);
void write_results_row(std::ostream& out, const SweepRow& row);
std::vector<SweepRow> read_results_csv(const std::filesystem::path& path);

using RowSink = std::function<void(const SweepRow&)>;

// Runs the whole grid in deterministic order (m outer, then p, rootless,
// k, family, weights). Per (m, p) the training set is normalized once and
// a single whole-set neighbour pass at max(k_grid) serves every cell:
// smaller k are prefixes, the rooted distance is the monotone 1/p root of
// the rootless one, and out-of-class lists are merges of per-class lists.
// Rows reach the sink as they are produced. A failing cell aborts the
// sweep with the cell identity in the exception message.
std::vector<SweepRow> run_sweep(const IngestedDataset& data, const SweepConfig& config,
                                const RowSink& sink = {});

// Best-p summary: per family, the p maximizing AUROC over rows matching
// the fix, ties toward smaller p. Families present in `rows` but missing
// from the slice are reported as errors.
struct BestCellFix {
    WeightKind weights = WeightKind::linear;
    std::size_t k = 256;
    std::size_t m = 4096;
    bool rootless = false;
};

struct BestCell {
    Family family;
    double p;
    double auroc;
};

std::vector<BestCell> best_cells(std::span<const SweepRow> rows, const BestCellFix& fix);

}  // namespace ampd
