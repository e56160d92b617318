#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace emdalign {

// A token is an opaque non-empty surface string without whitespace.
using Sentence = std::vector<std::string>;

struct Document {
  std::string doc_id;
  std::string lang;
  std::vector<Sentence> sentences;

  std::size_t token_count() const;
};

struct DocumentPair {
  std::string pair_id;
  Document source;
  Document target;
};

using Corpus = std::vector<DocumentPair>;

// One alignment link. Either side may be empty in gold data (1-to-0 / 0-to-1),
// never both. Indices are sorted and unique.
struct Link {
  std::vector<std::size_t> src;
  std::vector<std::size_t> tgt;
  std::optional<double> mass;

  bool operator==(const Link& other) const {
    return src == other.src && tgt == other.tgt;
  }
  auto operator<=>(const Link& other) const {
    if (auto c = src <=> other.src; c != 0) return c;
    return tgt <=> other.tgt;
  }
};

struct AlignmentSet {
  std::vector<Link> links;
};

using AlignmentMap = std::map<std::string, AlignmentSet>;

// Returns the reason a token is invalid, or nullopt when it is fine.
std::optional<std::string> token_problem(const std::string& token);

void validate_pair(const DocumentPair& pair);

// Checks exclusivity and non-emptiness; also bounds when lengths are given.
void validate_alignment(const AlignmentSet& set, const std::string& pair_id,
                        std::optional<std::size_t> src_sentences = std::nullopt,
                        std::optional<std::size_t> tgt_sentences = std::nullopt);

struct RejectedRecord {
  std::size_t line = 0;
  std::string pair_id;  // empty when the record could not be parsed at all
  std::string message;
};

struct LenientLoad {
  Corpus pairs;
  std::vector<RejectedRecord> rejected;
  std::size_t records = 0;  // non-blank lines seen
};

Corpus load_corpus(const std::string& path);
Corpus read_corpus(std::istream& in);
LenientLoad load_corpus_lenient(const std::string& path);
LenientLoad read_corpus_lenient(std::istream& in);

std::string corpus_record(const DocumentPair& pair);
void write_corpus(std::ostream& out, const Corpus& corpus);
void save_corpus(const std::string& path, const Corpus& corpus);

// Gold/system alignment files: "pair_id<TAB>src_csv<TAB>tgt_csv[<TAB>mass]".
// When a corpus is supplied every pair must exist in it and indices are
// bounds-checked against the declared documents.
AlignmentMap load_gold(const std::string& path, const Corpus* corpus = nullptr);
AlignmentMap read_gold(std::istream& in, const Corpus* corpus = nullptr);

void write_alignments(std::ostream& out, const AlignmentMap& alignments);
void save_alignments(const std::string& path, const AlignmentMap& alignments);

std::string format_index_list(const std::vector<std::size_t>& indices);

}  // namespace emdalign
