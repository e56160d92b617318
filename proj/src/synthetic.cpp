#include "synthetic.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include "error.hpp"
#include "io_util.hpp"
#include "rng.hpp"

namespace emdalign {

namespace {

std::string source_word(std::size_t k) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "s%05zu", k);
  return buf;
}

std::string target_word(std::size_t k) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "T%05zu", k);
  return buf;
}

enum class Shape { k11, k21, k12, k22 };

}  // namespace

void validate_config(const SyntheticConfig& c) {
  if (c.documents == 0) throw ConfigError("synthetic: documents must be positive");
  if (c.sentences == 0) throw ConfigError("synthetic: sentences must be positive");
  if (c.vocab_size == 0) throw ConfigError("synthetic: vocab_size must be positive");
  if (c.min_sentence_len == 0 || c.min_sentence_len > c.max_sentence_len)
    throw ConfigError("synthetic: need 1 <= min_sentence_len <= max_sentence_len");
  for (double p : {c.p_two_to_one, c.p_one_to_two, c.p_two_to_two}) {
    if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("synthetic: merge proportions must be in [0,1]");
  }
  if (c.p_two_to_one + c.p_one_to_two + c.p_two_to_two > 1.0 + 1e-12)
    throw ConfigError("synthetic: merge proportions sum above 1");
  if (c.source_lang == c.target_lang || c.source_lang.empty() || c.target_lang.empty())
    throw ConfigError("synthetic: language tags must be distinct and non-empty");
}

SyntheticCorpus generate_synthetic(const SyntheticConfig& config) {
  validate_config(config);
  Rng rng(config.seed);

  std::vector<std::size_t> bijection(config.vocab_size);
  std::iota(bijection.begin(), bijection.end(), std::size_t{0});
  rng.shuffle(bijection.begin(), bijection.end());

  SyntheticCorpus out;
  out.lexicon.reserve(config.vocab_size);
  for (std::size_t k = 0; k < config.vocab_size; ++k)
    out.lexicon.emplace_back(source_word(k), target_word(bijection[k]));

  auto draw_sentence = [&](std::size_t min_len) {
    const auto lo = static_cast<std::int64_t>(std::max(min_len, config.min_sentence_len));
    const auto hi = static_cast<std::int64_t>(std::max(config.max_sentence_len, std::max(min_len, config.min_sentence_len)));
    std::vector<std::size_t> ids(static_cast<std::size_t>(rng.between(lo, hi)));
    for (auto& id : ids) id = rng.below(config.vocab_size);
    return ids;
  };
  auto translate = [&](const std::vector<std::size_t>& ids) {
    std::vector<std::size_t> t(ids.size());
    for (std::size_t k = 0; k < ids.size(); ++k) t[k] = bijection[ids[k]];
    if (config.shuffle_tokens) rng.shuffle(t.begin(), t.end());
    return t;
  };
  auto to_source = [](const std::vector<std::size_t>& ids) {
    Sentence s;
    for (auto id : ids) s.push_back(source_word(id));
    return s;
  };
  auto to_target = [](std::vector<std::size_t>::const_iterator b,
                      std::vector<std::size_t>::const_iterator e) {
    Sentence s;
    for (auto it = b; it != e; ++it) s.push_back(target_word(*it));
    return s;
  };

  const int width = std::max<int>(1, static_cast<int>(std::to_string(config.documents - 1).size()));
  for (std::size_t d = 0; d < config.documents; ++d) {
    char id[64];
    std::snprintf(id, sizeof id, "syn%0*zu", width, d);
    DocumentPair pair;
    pair.pair_id = id;
    pair.source = {std::string(id) + ".src", config.source_lang, {}};
    pair.target = {std::string(id) + ".tgt", config.target_lang, {}};
    AlignmentSet gold;

    std::size_t i = 0;
    while (i < config.sentences) {
      const bool two_left = i + 1 < config.sentences;
      const double u = rng.uniform();
      Shape shape = Shape::k11;
      if (u < config.p_two_to_one)
        shape = Shape::k21;
      else if (u < config.p_two_to_one + config.p_one_to_two)
        shape = Shape::k12;
      else if (u < config.p_two_to_one + config.p_one_to_two + config.p_two_to_two)
        shape = Shape::k22;
      if (!two_left && (shape == Shape::k21 || shape == Shape::k22)) shape = Shape::k11;

      const std::size_t t0 = pair.target.sentences.size();
      Link link;
      switch (shape) {
        case Shape::k11: {
          auto s = draw_sentence(1);
          auto t = translate(s);
          pair.source.sentences.push_back(to_source(s));
          pair.target.sentences.push_back(to_target(t.begin(), t.end()));
          link = {{i}, {t0}, {}};
          i += 1;
          break;
        }
        case Shape::k21: {
          auto a = draw_sentence(1);
          auto b = draw_sentence(1);
          std::vector<std::size_t> joined = a;
          joined.insert(joined.end(), b.begin(), b.end());
          auto t = translate(joined);
          pair.source.sentences.push_back(to_source(a));
          pair.source.sentences.push_back(to_source(b));
          pair.target.sentences.push_back(to_target(t.begin(), t.end()));
          link = {{i, i + 1}, {t0}, {}};
          i += 2;
          break;
        }
        case Shape::k12: {
          auto s = draw_sentence(2);
          auto t = translate(s);
          const auto cut = static_cast<std::ptrdiff_t>(
              rng.between(1, static_cast<std::int64_t>(t.size()) - 1));
          pair.source.sentences.push_back(to_source(s));
          pair.target.sentences.push_back(to_target(t.begin(), t.begin() + cut));
          pair.target.sentences.push_back(to_target(t.begin() + cut, t.end()));
          link = {{i}, {t0, t0 + 1}, {}};
          i += 1;
          break;
        }
        case Shape::k22: {
          auto a = draw_sentence(1);
          auto b = draw_sentence(2);
          std::vector<std::size_t> joined = a;
          joined.insert(joined.end(), b.begin(), b.end());
          auto t = translate(joined);
          // Any cut except the source boundary (total >= 3 guarantees one).
          std::int64_t cut = static_cast<std::int64_t>(a.size());
          while (cut == static_cast<std::int64_t>(a.size()))
            cut = rng.between(1, static_cast<std::int64_t>(t.size()) - 1);
          pair.source.sentences.push_back(to_source(a));
          pair.source.sentences.push_back(to_source(b));
          pair.target.sentences.push_back(to_target(t.begin(), t.begin() + cut));
          pair.target.sentences.push_back(to_target(t.begin() + cut, t.end()));
          link = {{i, i + 1}, {t0, t0 + 1}, {}};
          i += 2;
          break;
        }
      }
      gold.links.push_back(std::move(link));
    }
    out.gold.emplace(pair.pair_id, std::move(gold));
    out.pairs.push_back(std::move(pair));
  }
  return out;
}

Lexicon load_lexicon(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  Lexicon lex;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ss(line);
    std::string a, b, extra;
    if (!(ss >> a)) continue;
    if (!(ss >> b) || (ss >> extra))
      throw ParseError("lexicon line " + std::to_string(lineno) + ": expected two columns");
    lex.emplace_back(std::move(a), std::move(b));
  }
  return lex;
}

void save_lexicon(const std::string& path, const Lexicon& lexicon) {
  atomic_write(path, [&](std::ostream& out) {
    for (const auto& [a, b] : lexicon) out << a << '\t' << b << '\n';
  });
}

}  // namespace emdalign
