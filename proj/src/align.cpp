#include "align.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <thread>

#include "error.hpp"
#include "union_find.hpp"

namespace emdalign {

void validate_params(const AlignParams& p) {
  if (!(p.alpha >= 0.0) || !std::isfinite(p.alpha)) throw ConfigError("alpha must be >= 0");
  if (!(p.gamma >= 0.0) || !std::isfinite(p.gamma)) throw ConfigError("gamma must be >= 0");
  if (p.grid.empty()) throw ConfigError("epsilon grid is empty");
  for (double e : p.grid)
    if (!(e >= 0.0 && e <= 1.0)) throw ConfigError("epsilon grid values must be in [0, 1]");
  if (!(p.zero_tol >= 0.0) || p.zero_tol >= 1.0) throw ConfigError("zero_tol must be in [0, 1)");
  if (!(p.sim_floor > 0.0 && p.sim_floor <= 1.0)) throw ConfigError("sim_floor must be in (0, 1]");
  if (p.split_threshold < 1) throw ConfigError("split threshold must be >= 1");
  validate_params(p.gc);
}

std::vector<AlignmentGroup> extract_groups(const Matrix& p, double zero_tol) {
  const std::size_t n = p.rows(), m = p.cols();
  UnionFind uf(n + m);
  std::vector<bool> touched(n + m, false);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (p(i, j) > zero_tol) {
        uf.unite(i, n + j);
        touched[i] = touched[n + j] = true;
      }
    }
  }
  std::map<std::size_t, std::size_t> root_to_group;
  std::vector<AlignmentGroup> groups;
  // Rows in increasing order, so groups come out ordered by smallest source index.
  for (std::size_t i = 0; i < n; ++i) {
    if (!touched[i]) continue;
    auto [it, fresh] = root_to_group.emplace(uf.find(i), groups.size());
    if (fresh) groups.emplace_back();
    groups[it->second].src.push_back(i);
  }
  for (std::size_t j = 0; j < m; ++j) {
    if (!touched[n + j]) continue;
    groups[root_to_group.at(uf.find(n + j))].tgt.push_back(j);
  }
  for (auto& g : groups) {
    for (auto i : g.src)
      for (auto j : g.tgt)
        if (p(i, j) > zero_tol) g.mass += p(i, j);
  }
  return groups;
}

namespace {

double block_mass(const Matrix* plan, const std::vector<std::size_t>& src,
                  const std::vector<std::size_t>& tgt) {
  if (!plan) return 0.0;
  double mass = 0.0;
  for (auto i : src)
    for (auto j : tgt) mass += (*plan)(i, j);
  return mass;
}

}  // namespace

std::vector<AlignmentGroup> split_group(const AlignmentGroup& group, const DocumentPair& pair,
                                        const GCParams& params, const Matrix* plan,
                                        std::size_t threshold) {
  if (std::min(group.src.size(), group.tgt.size()) < threshold) return {group};
  std::vector<std::size_t> src_len, tgt_len;
  for (auto i : group.src) {
    if (i >= pair.source.sentences.size()) throw ValidationError("group index out of bounds");
    src_len.push_back(pair.source.sentences[i].size());
  }
  for (auto j : group.tgt) {
    if (j >= pair.target.sentences.size()) throw ValidationError("group index out of bounds");
    tgt_len.push_back(pair.target.sentences[j].size());
  }
  const AlignmentSet local = gc_align(src_len, tgt_len, params);
  std::vector<AlignmentGroup> out;
  out.reserve(local.links.size());
  for (const auto& link : local.links) {
    AlignmentGroup g;
    for (auto k : link.src) g.src.push_back(group.src[k]);
    for (auto k : link.tgt) g.tgt.push_back(group.tgt[k]);
    g.mass = block_mass(plan, g.src, g.tgt);
    out.push_back(std::move(g));
  }
  return out;
}

PairAlignment align_pair_detailed(const DocumentPair& pair, const EmbeddingTable& table,
                                  const AlignParams& params) {
  validate_params(params);
  PairAlignment result;
  result.distances = build_distance_matrix(pair, table, params.alpha, params.sim_floor);
  result.selection = select_epsilon(result.distances, params.gamma, params.grid, params.zero_tol);
  const Matrix& p = result.selection.plan.p;
  for (const auto& group : extract_groups(p, params.zero_tol)) {
    for (auto& piece : split_group(group, pair, params.gc, &p, params.split_threshold)) {
      if (piece.src.empty() || piece.tgt.empty()) continue;
      result.alignment.links.push_back({std::move(piece.src), std::move(piece.tgt), piece.mass});
    }
  }
  return result;
}

AlignmentSet gc_align_pair(const DocumentPair& pair, const GCParams& params) {
  std::vector<std::size_t> src_len, tgt_len;
  for (const auto& s : pair.source.sentences) src_len.push_back(s.size());
  for (const auto& t : pair.target.sentences) tgt_len.push_back(t.size());
  AlignmentSet all = gc_align(src_len, tgt_len, params);
  AlignmentSet out;
  for (auto& link : all.links)
    if (!link.src.empty() && !link.tgt.empty()) out.links.push_back(std::move(link));
  return out;
}

namespace {

template <typename Fn>
std::vector<PairOutcome> run_pairs(const Corpus& corpus, std::size_t jobs, Fn&& fn) {
  std::vector<PairOutcome> outcomes(corpus.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    while (true) {
      const std::size_t k = next.fetch_add(1);
      if (k >= corpus.size()) return;
      outcomes[k].pair_id = corpus[k].pair_id;
      try {
        outcomes[k].alignment = fn(corpus[k]);
      } catch (const std::exception& e) {
        outcomes[k].error = e.what();
      }
    }
  };
  jobs = std::max<std::size_t>(1, std::min(jobs, corpus.size()));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return outcomes;
}

}  // namespace

std::vector<PairOutcome> align_corpus(const Corpus& corpus, const EmbeddingTable& table,
                                      const AlignParams& params, std::size_t jobs,
                                      const PairObserver& observer) {
  validate_params(params);
  return run_pairs(corpus, jobs, [&](const DocumentPair& pair) {
    PairAlignment r = align_pair_detailed(pair, table, params);
    if (observer) observer(pair, r);
    return std::move(r.alignment);
  });
}

std::vector<PairOutcome> gc_align_corpus(const Corpus& corpus, const GCParams& params,
                                         std::size_t jobs) {
  validate_params(params);
  return run_pairs(corpus, jobs,
                   [&](const DocumentPair& pair) { return gc_align_pair(pair, params); });
}

}  // namespace emdalign
