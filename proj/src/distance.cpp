#include "distance.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <ostream>

#include "error.hpp"
#include "io_util.hpp"

namespace emdalign {

namespace {

using ResolvedSentence = std::vector<std::size_t>;  // in-vocabulary rows only

ResolvedSentence resolve(const Sentence& s, std::string_view lang, const EmbeddingTable& table) {
  ResolvedSentence out;
  out.reserve(s.size());
  for (const auto& tok : s) {
    if (auto idx = table.index_of(make_key(lang, tok))) out.push_back(*idx);
  }
  return out;
}

double d1_resolved(const ResolvedSentence& s, const ResolvedSentence& t,
                   const EmbeddingTable& table, double sim_floor) {
  if (s.empty() || t.empty()) return 1.0 / sim_floor;
  double total = 0.0;
  for (auto w : s) {
    double best = -1.0;
    for (auto v : t) best = std::max(best, table.cosine_at(w, v));
    total += best;
  }
  const double mean = std::clamp(total / static_cast<double>(s.size()), sim_floor, 1.0);
  return 1.0 / mean;
}

void check_floor(double sim_floor) {
  if (!(sim_floor > 0.0 && sim_floor <= 1.0))
    throw ConfigError("sim_floor must be in (0, 1]");
}

}  // namespace

double word_distance_d1(const Sentence& s, std::string_view s_lang, const Sentence& t,
                        std::string_view t_lang, const EmbeddingTable& table, double sim_floor) {
  check_floor(sim_floor);
  return d1_resolved(resolve(s, s_lang, table), resolve(t, t_lang, table), table, sim_floor);
}

double sentence_position(const Document& doc, std::size_t i) {
  if (i >= doc.sentences.size()) throw ValidationError("sentence index out of range");
  std::size_t before = 0;
  for (std::size_t p = 0; p < i; ++p) before += doc.sentences[p].size();
  return static_cast<double>(before) / static_cast<double>(doc.token_count());
}

namespace {

void lengths_and_positions(const Document& doc, std::vector<double>& len,
                           std::vector<double>& pos) {
  const auto total = static_cast<double>(doc.token_count());
  std::size_t before = 0;
  for (const auto& s : doc.sentences) {
    pos.push_back(static_cast<double>(before) / total);
    len.push_back(static_cast<double>(s.size()) / total);
    before += s.size();
  }
}

}  // namespace

DistanceMatrix build_distance_matrix(const DocumentPair& pair, const EmbeddingTable& table,
                                     double alpha, double sim_floor) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw ConfigError("alpha must be >= 0");
  check_floor(sim_floor);
  validate_pair(pair);
  const auto& src = pair.source.sentences;
  const auto& tgt = pair.target.sentences;

  DistanceMatrix dm;
  dm.alpha = alpha;
  dm.d = Matrix(src.size(), tgt.size());
  lengths_and_positions(pair.source, dm.len_src, dm.pos_src);
  lengths_and_positions(pair.target, dm.len_tgt, dm.pos_tgt);

  std::vector<ResolvedSentence> rs, rt;
  for (const auto& s : src) rs.push_back(resolve(s, pair.source.lang, table));
  for (const auto& t : tgt) rt.push_back(resolve(t, pair.target.lang, table));

  for (std::size_t i = 0; i < src.size(); ++i) {
    for (std::size_t j = 0; j < tgt.size(); ++j) {
      dm.d(i, j) = d1_resolved(rs[i], rt[j], table, sim_floor) +
                   alpha * positional_distance_d2(dm.pos_src[i], dm.pos_tgt[j]);
    }
  }
  return dm;
}

void validate_distance_matrix(const DistanceMatrix& dm) {
  if (dm.rows() == 0 || dm.cols() == 0) throw ValidationError("distance matrix is empty");
  if (dm.len_src.size() != dm.rows() || dm.len_tgt.size() != dm.cols())
    throw ValidationError("length vectors do not match distance matrix shape");
  for (double v : dm.d.values()) {
    if (!std::isfinite(v) || v < 0.0)
      throw ValidationError("distance matrix has a negative or non-finite entry");
  }
  auto check_lengths = [](const std::vector<double>& len, const char* side) {
    double sum = 0.0;
    for (double l : len) {
      if (!(l > 0.0) || !std::isfinite(l))
        throw ValidationError(std::string(side) + " length entries must be positive");
      sum += l;
    }
    if (std::abs(sum - 1.0) > 1e-9)
      throw ValidationError(std::string(side) + " lengths do not sum to 1");
  };
  check_lengths(dm.len_src, "source");
  check_lengths(dm.len_tgt, "target");
}

void write_distance_tsv(std::ostream& out, const DistanceMatrix& dm) {
  for (std::size_t i = 0; i < dm.rows(); ++i) {
    for (std::size_t j = 0; j < dm.cols(); ++j) {
      if (j) out << '\t';
      out << shortest_repr(dm.d(i, j));
    }
    out << '\n';
  }
}

}  // namespace emdalign
