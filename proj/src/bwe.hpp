#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "corpus.hpp"
#include "embedding_table.hpp"

namespace emdalign {

struct PseudoToken {
  std::string surface;
  bool from_source = true;
  std::size_t index = 0;     // 1-based position within its own document
  std::size_t doc_tokens = 0;  // N or M

  double relative_position() const {
    return static_cast<double>(index) / static_cast<double>(doc_tokens);
  }
};

struct PseudoDocument {
  std::string source_lang;
  std::string target_lang;
  std::vector<PseudoToken> tokens;

  std::string key(std::size_t k) const {
    return make_key(tokens[k].from_source ? source_lang : target_lang, tokens[k].surface);
  }
};

// Drops sentence boundaries and orders every token by relative position i/N
// (source) or j/M (target), descending. Ties: source token first, then the
// lower original index.
PseudoDocument merge_pair(const DocumentPair& pair);

struct SkipGramParams {
  std::size_t dim = 100;
  std::size_t window = 10;
  std::size_t negative = 5;
  std::size_t epochs = 5;
  std::size_t min_count = 5;
  double learning_rate = 0.025;
  std::uint64_t seed = 1;
  // Deterministic mode trains on one thread. Otherwise `threads` workers
  // update the shared vectors without synchronisation.
  bool deterministic = true;
  std::size_t threads = 1;
};

void validate_params(const SkipGramParams& params);

// Skip-gram with negative sampling over the merged pseudo-documents.
EmbeddingTable train_bwe(const Corpus& pairs, const SkipGramParams& params);

}  // namespace emdalign
