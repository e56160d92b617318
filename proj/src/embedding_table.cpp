#include "embedding_table.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "error.hpp"
#include "io_util.hpp"

namespace emdalign {

std::string make_key(std::string_view lang, std::string_view surface) {
  std::string key;
  key.reserve(lang.size() + 1 + surface.size());
  key.append(lang).push_back(':');
  key.append(surface);
  return key;
}

std::string_view key_lang(std::string_view key) {
  auto colon = key.find(':');
  return colon == std::string_view::npos ? std::string_view{} : key.substr(0, colon);
}

std::string_view key_surface(std::string_view key) {
  auto colon = key.find(':');
  return colon == std::string_view::npos ? key : key.substr(colon + 1);
}

EmbeddingTable::EmbeddingTable(std::size_t dim, std::vector<std::string> keys,
                               std::vector<float> vectors)
    : dim_(dim), keys_(std::move(keys)), vectors_(std::move(vectors)) {
  if (dim_ == 0) throw ValidationError("embedding dimension must be positive");
  if (vectors_.size() != keys_.size() * dim_)
    throw ValidationError("embedding storage does not match vocab_size * dim");
  units_.resize(vectors_.size());
  index_.reserve(keys_.size());
  for (std::size_t i = 0; i < keys_.size(); ++i) {
    if (key_lang(keys_[i]).empty())
      throw ValidationError("embedding key '" + keys_[i] + "' lacks a '<lang>:' prefix");
    if (!index_.emplace(keys_[i], i).second)
      throw ValidationError("duplicate embedding key '" + keys_[i] + "'");
    double norm = 0.0;
    for (std::size_t d = 0; d < dim_; ++d) {
      const double v = vectors_[i * dim_ + d];
      norm += v * v;
    }
    norm = std::sqrt(norm);
    for (std::size_t d = 0; d < dim_; ++d)
      units_[i * dim_ + d] = norm > 0.0 ? vectors_[i * dim_ + d] / norm : 0.0;
  }
}

std::optional<std::size_t> EmbeddingTable::index_of(std::string_view key) const {
  auto it = index_.find(std::string(key));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

double EmbeddingTable::cosine_at(std::size_t a, std::size_t b) const {
  auto ua = unit(a);
  auto ub = unit(b);
  double dot = 0.0;
  for (std::size_t d = 0; d < dim_; ++d) dot += ua[d] * ub[d];
  return std::clamp(dot, -1.0, 1.0);
}

std::optional<double> cosine(const EmbeddingTable& table, std::string_view a, std::string_view b) {
  auto ia = table.index_of(a);
  auto ib = table.index_of(b);
  if (!ia || !ib) return std::nullopt;
  return table.cosine_at(*ia, *ib);
}

std::optional<std::vector<Neighbor>> top_k(const EmbeddingTable& table, std::string_view query,
                                           std::size_t k, std::string_view restrict_lang) {
  auto q = table.index_of(query);
  if (!q) return std::nullopt;
  std::vector<std::pair<double, std::size_t>> scored;
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (i == *q || (!restrict_lang.empty() && key_lang(table.keys()[i]) != restrict_lang))
      continue;
    scored.emplace_back(table.cosine_at(*q, i), i);
  }
  auto better = [&](const auto& x, const auto& y) {
    if (x.first != y.first) return x.first > y.first;
    return table.keys()[x.second] < table.keys()[y.second];
  };
  const std::size_t keep = std::min(k, scored.size());
  std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(keep),
                    scored.end(), better);
  std::vector<Neighbor> out;
  out.reserve(keep);
  for (std::size_t r = 0; r < keep; ++r)
    out.push_back({table.keys()[scored[r].second], scored[r].first});
  return out;
}

LexiconAccuracy lexicon_accuracy(const EmbeddingTable& table,
                                 std::span<const std::pair<std::string, std::string>> lexicon,
                                 std::string_view source_lang, std::string_view target_lang,
                                 std::span<const std::size_t> ks) {
  LexiconAccuracy result;
  result.entries = lexicon.size();
  std::size_t max_k = 0;
  for (auto k : ks) max_k = std::max(max_k, k);
  std::vector<std::size_t> hits(ks.size(), 0);

  for (std::size_t e = 0; e < lexicon.size(); ++e) {
    const auto query = make_key(source_lang, lexicon[e].first);
    const auto expected = make_key(target_lang, lexicon[e].second);
    auto ranked = top_k(table, query, max_k, target_lang);
    if (!ranked) {
      ++result.oov;
      result.oov_entries.push_back(e);
      continue;
    }
    auto pos = std::find_if(ranked->begin(), ranked->end(),
                            [&](const Neighbor& n) { return n.key == expected; });
    if (pos == ranked->end()) continue;
    const auto rank = static_cast<std::size_t>(pos - ranked->begin());
    for (std::size_t i = 0; i < ks.size(); ++i) {
      if (rank < ks[i]) ++hits[i];
    }
  }
  for (std::size_t i = 0; i < ks.size(); ++i) {
    const double acc = lexicon.empty() ? 0.0
                                       : static_cast<double>(hits[i]) /
                                             static_cast<double>(lexicon.size());
    result.accuracy.emplace_back(ks[i], acc);
  }
  return result;
}

void write_embeddings(std::ostream& out, const EmbeddingTable& table) {
  out << table.size() << ' ' << table.dim() << '\n';
  for (std::size_t i = 0; i < table.size(); ++i) {
    out << table.keys()[i];
    for (float v : table.vector(i)) out << ' ' << shortest_repr(v);
    out << '\n';
  }
}

void save_embeddings(const std::string& path, const EmbeddingTable& table) {
  atomic_write(path, [&](std::ostream& out) { write_embeddings(out, table); });
}

EmbeddingTable read_embeddings(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("embedding file: missing header");
  std::size_t vocab = 0, dim = 0;
  {
    std::istringstream hs(line);
    std::string extra;
    if (!(hs >> vocab >> dim) || (hs >> extra) || dim == 0)
      throw ParseError("embedding file line 1: expected '<vocab_size> <dim>'");
  }
  std::vector<std::string> keys;
  std::vector<float> vectors;
  keys.reserve(vocab);
  vectors.reserve(vocab * dim);
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const char* p = line.data();
    const char* end = p + line.size();
    const char* key_end = std::find(p, end, ' ');
    keys.emplace_back(p, key_end);
    p = key_end;
    for (std::size_t d = 0; d < dim; ++d) {
      while (p < end && *p == ' ') ++p;
      float v = 0.0f;
      auto [next, ec] = std::from_chars(p, end, v);
      if (ec != std::errc() || next == p || !std::isfinite(v))
        throw ParseError("embedding file line " + std::to_string(lineno) + ": expected " +
                         std::to_string(dim) + " finite floats");
      vectors.push_back(v);
      p = next;
    }
    while (p < end && (*p == ' ' || *p == '\r')) ++p;
    if (p != end)
      throw ParseError("embedding file line " + std::to_string(lineno) + ": trailing data");
  }
  if (keys.size() != vocab)
    throw ParseError("embedding file: header declares " + std::to_string(vocab) +
                     " entries, found " + std::to_string(keys.size()));
  try {
    return EmbeddingTable(dim, std::move(keys), std::move(vectors));
  } catch (const ValidationError& e) {
    throw ParseError(std::string("embedding file: ") + e.what());
  }
}

EmbeddingTable load_embeddings(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  return read_embeddings(in);
}

}  // namespace emdalign
