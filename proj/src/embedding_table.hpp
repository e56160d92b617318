#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace emdalign {

// Vocabulary keys are language-tagged: "<lang>:<surface>".
std::string make_key(std::string_view lang, std::string_view surface);
std::string_view key_lang(std::string_view key);
std::string_view key_surface(std::string_view key);

struct Neighbor {
  std::string key;
  double similarity = 0.0;
};

// Immutable after construction; safe to share across threads.
class EmbeddingTable {
 public:
  EmbeddingTable() = default;
  // `vectors` is row-major, keys.size() * dim floats.
  EmbeddingTable(std::size_t dim, std::vector<std::string> keys, std::vector<float> vectors);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return keys_.size(); }
  const std::vector<std::string>& keys() const noexcept { return keys_; }

  std::optional<std::size_t> index_of(std::string_view key) const;
  std::span<const float> vector(std::size_t index) const {
    return {vectors_.data() + index * dim_, dim_};
  }
  // Unit-normalised copy of a row (zero vectors stay zero).
  std::span<const double> unit(std::size_t index) const {
    return {units_.data() + index * dim_, dim_};
  }

  // Cosine similarity between two vocabulary rows.
  double cosine_at(std::size_t a, std::size_t b) const;

  friend bool operator==(const EmbeddingTable& a, const EmbeddingTable& b) {
    return a.dim_ == b.dim_ && a.keys_ == b.keys_ && a.vectors_ == b.vectors_;
  }

 private:
  std::size_t dim_ = 0;
  std::vector<std::string> keys_;
  std::vector<float> vectors_;
  std::vector<double> units_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Returns nullopt when either key is out of vocabulary.
std::optional<double> cosine(const EmbeddingTable& table, std::string_view a, std::string_view b);

// The k most similar keys of language `restrict_lang` (any when empty), descending by cosine,
// ties broken lexicographically by key. The query itself is never returned.
std::optional<std::vector<Neighbor>> top_k(const EmbeddingTable& table, std::string_view query,
                                           std::size_t k, std::string_view restrict_lang);

struct LexiconAccuracy {
  std::vector<std::pair<std::size_t, double>> accuracy;  // (k, fraction), input order of ks
  std::size_t entries = 0;
  std::size_t oov = 0;                  // entries whose source key is missing
  std::vector<std::size_t> oov_entries;  // their indices into the lexicon
};

// Lexicon entries are (source surface, target surface) pairs; they are tagged
// with `source_lang` / `target_lang` before lookup.
LexiconAccuracy lexicon_accuracy(const EmbeddingTable& table,
                                 std::span<const std::pair<std::string, std::string>> lexicon,
                                 std::string_view source_lang, std::string_view target_lang,
                                 std::span<const std::size_t> ks);

// Text format: "<vocab> <dim>" header, then "<lang>:<surface> f1 ... fdim".
void write_embeddings(std::ostream& out, const EmbeddingTable& table);
void save_embeddings(const std::string& path, const EmbeddingTable& table);
EmbeddingTable read_embeddings(std::istream& in);
EmbeddingTable load_embeddings(const std::string& path);

}  // namespace emdalign
