// Licensed under the Apache License, Version 2.0.
// http://www.apache.org/licenses/LICENSE-2.0
//
// ampd command line: ingest raw corpora into the token-count dataset
// format, run grid sweeps, score single configurations, and evaluate
// score files.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ampd/corpus.hpp"
#include "ampd/evaluation.hpp"
#include "ampd/harness.hpp"
#include "ampd/kernels.hpp"

namespace {

struct ClassifyArgs {
    std::string data;
    std::string family = "nn";
    double p = 2.0;
    std::size_t m = 4096;
    std::size_t k = 16;
    std::string weights = "linear";
    bool rootless = false;
    std::string out;
    std::string labels_out;
    std::string vocab_out;
    std::size_t threads = 0;
};

void run_ingest(const std::string& format, const std::string& train_path,
                const std::string& test_path, const std::string& out_path) {
    ampd::CorpusFormat fmt;
    if (format == "dir")
        fmt = ampd::CorpusFormat::dir_per_class;
    else if (format == "jsonl")
        fmt = ampd::CorpusFormat::jsonl;
    else
        throw std::runtime_error("--format must be 'dir' or 'jsonl'");

    ampd::IngestedDataset ds;
    ds.train = ampd::count_corpus(ampd::load_corpus(train_path, fmt, ampd::Split::train));
    ds.test = ampd::count_corpus(ampd::load_corpus(test_path, fmt, ampd::Split::test));
    ampd::save_dataset(ds, out_path);
    std::cout << "ingested " << ds.train.documents.size() << " train / "
              << ds.test.documents.size() << " test documents -> " << out_path << "\n";
}

void run_sweep_cmd(const std::string& config_path, const std::string& data_path,
                   const std::string& out_path) {
    const ampd::SweepConfig config = config_path.empty()
                                         ? ampd::SweepConfig::defaults()
                                         : ampd::load_sweep_config(config_path);
    const ampd::IngestedDataset data = ampd::load_dataset(data_path);

    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    ampd::write_results_header(out);
    std::size_t n = 0;
    try {
        ampd::run_sweep(data, config, [&](const ampd::SweepRow& row) {
            ampd::write_results_row(out, row);
            out.flush();
            ++n;
        });
    } catch (const std::exception& e) {
        out << "# aborted: " << e.what() << "\n";
        out.flush();
        throw;
    }
    std::cout << n << " rows -> " << out_path << "\n";
}

void run_classify(const ClassifyArgs& a) {
    const ampd::IngestedDataset data = ampd::load_dataset(a.data);
    const ampd::Vocabulary vocab = ampd::build_vocabulary(data.train, a.m);
    const ampd::LabeledDataset train = ampd::vectorize(data.train, vocab);
    const ampd::LabeledDataset test = ampd::vectorize(data.test, vocab);

    const ampd::ClassifierSpec spec(ampd::parse_family(a.family), a.k,
                                    ampd::parse_weight_kind(a.weights),
                                    ampd::MetricSpec(a.p, a.rootless));
    const ampd::ScoreMatrix scores = ampd::score_all(test, train, spec, a.threads);

    if (!a.vocab_out.empty()) {
        std::ofstream vf(a.vocab_out, std::ios::binary);
        if (!vf) throw std::runtime_error("cannot write " + a.vocab_out);
        ampd::write_vocabulary(vocab, vf);
    }
    if (!a.out.empty()) {
        std::ofstream sf(a.out, std::ios::binary);
        if (!sf) throw std::runtime_error("cannot write " + a.out);
        ampd::write_scores_csv(scores, sf);
    } else {
        ampd::write_scores_csv(scores, std::cout);
    }

    std::vector<std::string> label_names;
    label_names.reserve(test.size());
    for (std::size_t r = 0; r < test.size(); ++r)
        label_names.push_back(test.class_name(test.label(r)));
    if (!a.labels_out.empty()) {
        std::ofstream lf(a.labels_out, std::ios::binary);
        if (!lf) throw std::runtime_error("cannot write " + a.labels_out);
        ampd::write_labels_csv(label_names, lf);
    }

    // Headline numbers on stderr so stdout stays a clean scores stream.
    std::vector<ampd::ClassId> test_labels(test.size());
    for (std::size_t r = 0; r < test.size(); ++r) {
        const ampd::ClassId c = train.find_class(label_names[r]);
        if (c == train.n_classes())
            throw std::runtime_error("test label '" + label_names[r] +
                                     "' is absent from the training split");
        test_labels[r] = c;
    }
    const ampd::EvaluationResult ev = ampd::multiclass_auroc(scores, test_labels);
    std::fprintf(stderr, "auroc %.6f\nauroc_ovr %.6f\n", ev.auroc,
                 ampd::ovr_macro_auc(scores, test_labels));
}

void run_eval(const std::string& scores_path, const std::string& labels_path) {
    std::ifstream sf(scores_path, std::ios::binary);
    if (!sf) throw std::runtime_error("unreadable file: " + scores_path);
    const ampd::ScoreMatrix scores = ampd::read_scores_csv(sf);

    std::ifstream lf(labels_path, std::ios::binary);
    if (!lf) throw std::runtime_error("unreadable file: " + labels_path);
    const std::vector<std::string> names = ampd::read_labels_csv(lf);
    if (names.size() != scores.n_rows)
        throw std::runtime_error("labels/scores row count mismatch");

    std::vector<ampd::ClassId> labels(names.size());
    for (std::size_t r = 0; r < names.size(); ++r) {
        const auto it = std::find(scores.class_names.begin(), scores.class_names.end(),
                                  names[r]);
        if (it == scores.class_names.end())
            throw std::runtime_error("label '" + names[r] + "' has no score column");
        labels[r] = static_cast<ampd::ClassId>(it - scores.class_names.begin());
    }
    const ampd::EvaluationResult ev = ampd::multiclass_auroc(scores, labels);
    std::printf("auroc %.6f\nauroc_ovr %.6f\n", ev.auroc,
                ampd::ovr_macro_auc(scores, labels));
}

void run_vocab(const std::string& data_path, std::size_t m, const std::string& out_path) {
    const ampd::IngestedDataset data = ampd::load_dataset(data_path);
    const ampd::Vocabulary vocab = ampd::build_vocabulary(data.train, m);
    if (out_path.empty()) {
        ampd::write_vocabulary(vocab, std::cout);
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + out_path);
        ampd::write_vocabulary(vocab, out);
    }
}

void run_best(const std::string& results_path, const ampd::BestCellFix& fix) {
    const auto rows = ampd::read_results_csv(results_path);
    const auto best = ampd::best_cells(rows, fix);
    std::printf("%-12s %-4s %s\n", "family", "p", "auroc");
    for (const auto& b : best)
        std::printf("%-12s %-4.1f %.6f\n", ampd::family_name(b.family).c_str(), b.p,
                    b.auroc);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"angular Minkowski p-distance classification toolkit"};
    app.require_subcommand(1);

    std::string format = "dir", train_path, test_path, dataset_out;
    auto* ingest = app.add_subcommand("ingest", "tokenize a corpus into a dataset file");
    ingest->add_option("--format", format, "corpus layout: dir | jsonl")->required();
    ingest->add_option("--train", train_path, "training split path")->required();
    ingest->add_option("--test", test_path, "test split path")->required();
    ingest->add_option("--out", dataset_out, "dataset file to write")->required();

    std::string config_path, data_path, results_out;
    auto* sweep = app.add_subcommand("sweep", "run the hyperparameter grid");
    sweep->add_option("--config", config_path, "CONFIG.json (omitted keys use defaults)");
    sweep->add_option("--data", data_path, "dataset file from ingest")->required();
    sweep->add_option("--out", results_out, "results.csv to write")->required();

    ClassifyArgs cargs;
    auto* classify = app.add_subcommand("classify", "score one configuration");
    classify->add_option("--data", cargs.data, "dataset file from ingest")->required();
    classify->add_option("--family", cargs.family, "nn | frnn-upper | frnn-lower | frnn-mean")
        ->required();
    classify->add_option("--p", cargs.p, "metric exponent")->required();
    classify->add_option("--m", cargs.m, "vocabulary size")->required();
    classify->add_option("--k", cargs.k, "number of neighbours")->required();
    classify->add_option("--weights", cargs.weights, "linear | reciprocal")->required();
    classify->add_flag("--rootless", cargs.rootless, "omit the outer 1/p root");
    classify->add_option("--out", cargs.out, "scores.csv (default: stdout)");
    classify->add_option("--labels-out", cargs.labels_out, "write test labels csv");
    classify->add_option("--vocab-out", cargs.vocab_out, "write the vocabulary, one token per line");
    classify->add_option("--threads", cargs.threads, "worker threads (0 = hardware)");

    std::string scores_path, labels_path;
    auto* eval = app.add_subcommand("eval", "AUROC of a scores/labels csv pair");
    eval->add_option("--scores", scores_path, "scores.csv")->required();
    eval->add_option("--labels", labels_path, "labels.csv")->required();

    std::string vocab_data, vocab_out;
    std::size_t vocab_m = 4096;
    auto* vocab = app.add_subcommand("vocab", "export the top-m training vocabulary");
    vocab->add_option("--data", vocab_data, "dataset file from ingest")->required();
    vocab->add_option("--m", vocab_m, "vocabulary size")->required();
    vocab->add_option("--out", vocab_out, "output file (default: stdout)");

    std::string best_results;
    ampd::BestCellFix fix;
    std::string best_weights = "linear";
    bool best_rootless = false;
    auto* best = app.add_subcommand("best", "best (p, auroc) per family on a fixed slice");
    best->add_option("--results", best_results, "results.csv from sweep")->required();
    best->add_option("--weights", best_weights, "weight kind of the slice");
    best->add_option("--k", fix.k, "k of the slice");
    best->add_option("--m", fix.m, "m of the slice");
    best->add_flag("--rootless", best_rootless, "take the rootless slice");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*ingest) run_ingest(format, train_path, test_path, dataset_out);
        if (*sweep) run_sweep_cmd(config_path, data_path, results_out);
        if (*classify) run_classify(cargs);
        if (*eval) run_eval(scores_path, labels_path);
        if (*vocab) run_vocab(vocab_data, vocab_m, vocab_out);
        if (*best) {
            fix.weights = ampd::parse_weight_kind(best_weights);
            fix.rootless = best_rootless;
            run_best(best_results, fix);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
