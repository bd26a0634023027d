// Licensed under the Apache License, Version 2.0.
// http://www.apache.org/licenses/LICENSE-2.0

#include "ampd/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "ampd/tokenizer.hpp"

namespace fs = std::filesystem;

namespace ampd {
namespace {

void check_label(const std::string& label, const std::string& where) {
    if (label.empty()) throw std::runtime_error(where + ": empty label");
    if (label.find_first_of(",\n\r") != std::string::npos)
        throw std::runtime_error(where + ": label contains a comma or newline: '" + label + "'");
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw std::runtime_error("unreadable file: " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw std::runtime_error("unreadable file: " + p.string());
    return std::move(ss).str();
}

RawCorpus load_dir_per_class(const fs::path& root, Split split) {
    if (!fs::is_directory(root))
        throw std::runtime_error("not a directory: " + root.string());

    std::vector<std::string> labels;
    for (const auto& e : fs::directory_iterator(root))
        if (e.is_directory()) labels.push_back(e.path().filename().string());
    std::sort(labels.begin(), labels.end());

    RawCorpus corpus;
    corpus.split = split;
    for (const auto& label : labels) {
        check_label(label, root.string());
        std::vector<fs::path> files;
        for (const auto& e : fs::directory_iterator(root / label))
            if (e.is_regular_file()) files.push_back(e.path());
        std::sort(files.begin(), files.end());
        for (const auto& f : files)
            corpus.documents.push_back({read_file(f), label});
    }
    if (corpus.documents.empty())
        throw std::runtime_error("empty corpus: " + root.string());
    return corpus;
}

RawCorpus load_jsonl(const fs::path& path, Split split) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("unreadable file: " + path.string());

    RawCorpus corpus;
    corpus.split = split;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const std::string where = path.string() + ":" + std::to_string(lineno);
        nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object())
            throw std::runtime_error(where + ": malformed jsonl line");
        if (j.size() != 2 || !j.contains("text") || !j.contains("label") ||
            !j["text"].is_string() || !j["label"].is_string())
            throw std::runtime_error(where +
                                     ": expected exactly the string fields 'text' and 'label'");
        std::string label = j["label"].get<std::string>();
        check_label(label, where);
        corpus.documents.push_back({j["text"].get<std::string>(), std::move(label)});
    }
    if (corpus.documents.empty())
        throw std::runtime_error("empty corpus: " + path.string());
    return corpus;
}

}  // namespace

RawCorpus load_corpus(const fs::path& path, CorpusFormat format, Split split) {
    return format == CorpusFormat::dir_per_class ? load_dir_per_class(path, split)
                                                 : load_jsonl(path, split);
}

std::vector<std::pair<std::string, std::int64_t>> tokenize_counts(std::string_view text) {
    std::unordered_map<std::string, std::int64_t> counts;
    for (auto& tok : tokenize(text)) ++counts[std::move(tok)];
    std::vector<std::pair<std::string, std::int64_t>> out(counts.begin(), counts.end());
    std::sort(out.begin(), out.end());
    return out;
}

CountedCorpus count_corpus(const RawCorpus& corpus) {
    CountedCorpus out;
    out.split = corpus.split;
    out.documents.reserve(corpus.documents.size());
    for (const auto& doc : corpus.documents)
        out.documents.push_back({doc.label, tokenize_counts(doc.text)});
    return out;
}

Vocabulary build_vocabulary(const CountedCorpus& train, std::size_t m) {
    if (m == 0) throw std::invalid_argument("vocabulary size m must be at least 1");
    if (train.split != Split::train)
        throw std::invalid_argument("vocabulary must be built from the training split");

    std::unordered_map<std::string, std::int64_t> totals;
    for (const auto& doc : train.documents)
        for (const auto& [tok, n] : doc.counts) totals[tok] += n;

    std::vector<std::pair<std::string, std::int64_t>> ranked(totals.begin(), totals.end());
    // count descending, token ascending; full key makes the cutoff
    // independent of document order.
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    if (ranked.size() > m) ranked.resize(m);

    Vocabulary vocab;
    vocab.terms.reserve(ranked.size());
    for (auto& [tok, n] : ranked) {
        vocab.index.emplace(tok, static_cast<TermId>(vocab.terms.size()));
        vocab.terms.push_back(std::move(tok));
    }
    return vocab;
}

Vocabulary build_vocabulary(const RawCorpus& train, std::size_t m) {
    return build_vocabulary(count_corpus(train), m);
}

LabeledDataset vectorize(const CountedCorpus& corpus, const Vocabulary& vocab) {
    std::vector<SparseVector> vectors;
    std::vector<std::string> labels;
    vectors.reserve(corpus.documents.size());
    labels.reserve(corpus.documents.size());

    std::vector<std::pair<TermId, std::int64_t>> hits;
    for (const auto& doc : corpus.documents) {
        hits.clear();
        for (const auto& [tok, n] : doc.counts) {
            const auto it = vocab.index.find(tok);
            if (it != vocab.index.end()) hits.emplace_back(it->second, n);
        }
        std::sort(hits.begin(), hits.end());

        SparseVector v;
        v.dim = vocab.size();
        v.ids.reserve(hits.size());
        v.values.reserve(hits.size());
        for (const auto& [id, n] : hits) {
            v.ids.push_back(id);
            v.values.push_back(static_cast<double>(n));
        }
        vectors.push_back(std::move(v));
        labels.push_back(doc.label);
    }
    return LabeledDataset(std::move(vectors), labels);
}

LabeledDataset vectorize(const RawCorpus& corpus, const Vocabulary& vocab) {
    return vectorize(count_corpus(corpus), vocab);
}

void write_vocabulary(const Vocabulary& vocab, std::ostream& out) {
    for (const auto& term : vocab.terms) out << term << '\n';
}

void save_dataset(const IngestedDataset& ds, const fs::path& path) {
    auto corpus_json = [](const CountedCorpus& c) {
        nlohmann::json docs = nlohmann::json::array();
        for (const auto& doc : c.documents) {
            nlohmann::json counts = nlohmann::json::array();
            for (const auto& [tok, n] : doc.counts)
                counts.push_back(nlohmann::json::array({tok, n}));
            docs.push_back({{"label", doc.label}, {"counts", std::move(counts)}});
        }
        return docs;
    };
    nlohmann::json j{{"format", "ampd.dataset"},
                     {"version", 1},
                     {"train", corpus_json(ds.train)},
                     {"test", corpus_json(ds.test)}};
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << j.dump() << '\n';
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

IngestedDataset load_dataset(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("unreadable file: " + path.string());
    nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
    if (j.is_discarded() || !j.is_object() || j.value("format", "") != "ampd.dataset" ||
        j.value("version", 0) != 1)
        throw std::runtime_error("not an ampd dataset file: " + path.string());

    auto parse_corpus = [&](const char* key, Split split) {
        CountedCorpus c;
        c.split = split;
        for (const auto& doc : j.at(key)) {
            CountedDocument d;
            d.label = doc.at("label").get<std::string>();
            check_label(d.label, path.string());
            for (const auto& pair : doc.at("counts"))
                d.counts.emplace_back(pair.at(0).get<std::string>(),
                                      pair.at(1).get<std::int64_t>());
            if (!std::is_sorted(d.counts.begin(), d.counts.end()))
                std::sort(d.counts.begin(), d.counts.end());
            c.documents.push_back(std::move(d));
        }
        if (c.documents.empty())
            throw std::runtime_error("empty corpus in dataset file: " + path.string());
        return c;
    };
    IngestedDataset out;
    out.train = parse_corpus("train", Split::train);
    out.test = parse_corpus("test", Split::test);
    return out;
}

}  // namespace ampd
