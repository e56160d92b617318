#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "corpus.hpp"

namespace emdalign {

struct SyntheticConfig {
  std::size_t documents = 10;
  std::size_t sentences = 20;  // source sentences per document
  std::size_t vocab_size = 2000;
  std::size_t min_sentence_len = 8;
  std::size_t max_sentence_len = 24;
  // Probability that a link starting at the current source sentence is n-to-m.
  double p_two_to_one = 0.0;
  double p_one_to_two = 0.0;
  double p_two_to_two = 0.0;
  bool shuffle_tokens = false;  // permute translated tokens inside a target sentence
  std::string source_lang = "en";
  std::string target_lang = "xx";
  std::uint64_t seed = 1;
};

using Lexicon = std::vector<std::pair<std::string, std::string>>;

struct SyntheticCorpus {
  Corpus pairs;
  AlignmentMap gold;
  Lexicon lexicon;  // full source ↔ target word bijection (surfaces, no tags)
};

void validate_config(const SyntheticConfig& config);

// Pure function of `config`: identical configs give identical corpora.
SyntheticCorpus generate_synthetic(const SyntheticConfig& config);

Lexicon load_lexicon(const std::string& path);
void save_lexicon(const std::string& path, const Lexicon& lexicon);

}  // namespace emdalign
