// Licensed under the Apache License, Version 2.0.
// http://www.apache.org/licenses/LICENSE-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ampd/sparse.hpp"

namespace ampd {

enum class Split { train, test };

struct RawDocument {
    std::string text;
    std::string label;
};

struct RawCorpus {
    std::vector<RawDocument> documents;
    Split split = Split::train;
};

// Token -> total count for one document, sorted by token. The ingest
// artifact stores corpora in this pre-tokenized form so dimensionality
// sweeps never re-tokenize.
struct CountedDocument {
    std::string label;
    std::vector<std::pair<std::string, std::int64_t>> counts;
};

struct CountedCorpus {
    std::vector<CountedDocument> documents;
    Split split = Split::train;
};

struct IngestedDataset {
    CountedCorpus train;
    CountedCorpus test;
};

// The m most frequent training tokens, term ids assigned in
// (count descending, token ascending) order.
struct Vocabulary {
    std::vector<std::string> terms;
    std::unordered_map<std::string, TermId> index;

    std::size_t size() const { return terms.size(); }
};

enum class CorpusFormat { dir_per_class, jsonl };

// dir_per_class: <root>/<label>/<docid>, one UTF-8 document per regular
// file, label from the directory name; jsonl: one {"text","label"} object
// per line. Documents are ordered by (label, filename) or line order, so
// training indexes are load-time stable. Throws naming the offending item
// on unreadable files, malformed lines, or an empty corpus.
RawCorpus load_corpus(const std::filesystem::path& path, CorpusFormat format, Split split);

std::vector<std::pair<std::string, std::int64_t>> tokenize_counts(std::string_view text);

CountedCorpus count_corpus(const RawCorpus& corpus);

// Throws if m == 0 or if the corpus is not the training split. If fewer
// than m distinct tokens exist the vocabulary is just all of them.
Vocabulary build_vocabulary(const CountedCorpus& train, std::size_t m);
Vocabulary build_vocabulary(const RawCorpus& train, std::size_t m);

// Raw in-vocabulary token counts; out-of-vocabulary tokens are dropped and
// a fully out-of-vocabulary document becomes the zero vector.
LabeledDataset vectorize(const CountedCorpus& corpus, const Vocabulary& vocab);
LabeledDataset vectorize(const RawCorpus& corpus, const Vocabulary& vocab);

// One token per line; the line number is the term id.
void write_vocabulary(const Vocabulary& vocab, std::ostream& out);

void save_dataset(const IngestedDataset& ds, const std::filesystem::path& path);
IngestedDataset load_dataset(const std::filesystem::path& path);

}  // namespace ampd
