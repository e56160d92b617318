#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "corpus.hpp"
#include "distance.hpp"
#include "embedding_table.hpp"
#include "emd.hpp"
#include "galechurch.hpp"

namespace emdalign {

struct AlignmentGroup {
  std::vector<std::size_t> src;
  std::vector<std::size_t> tgt;
  double mass = 0.0;
};

struct AlignParams {
  double alpha = 1.0;
  double gamma = 1.0;
  std::vector<double> grid = default_epsilon_grid();
  double zero_tol = kDefaultZeroTol;
  double sim_floor = kDefaultSimFloor;
  GCParams gc;
  std::size_t split_threshold = 3;  // split when both sides have >= this many
};

void validate_params(const AlignParams& params);

// Connected components of the bipartite graph whose edges are the cells of
// `p` above zero_tol, ordered by smallest source index.
std::vector<AlignmentGroup> extract_groups(const Matrix& p, double zero_tol = kDefaultZeroTol);

// Re-aligns a group with Gale-Church when both sides reach the threshold.
// The result partitions the group's indices; one-sided (1-0 / 0-1) pieces
// carry zero mass. `plan` is used only for the sub-group masses.
std::vector<AlignmentGroup> split_group(const AlignmentGroup& group, const DocumentPair& pair,
                                        const GCParams& params, const Matrix* plan = nullptr,
                                        std::size_t threshold = 3);

struct PairAlignment {
  AlignmentSet alignment;
  DistanceMatrix distances;
  EpsilonSelection selection;
};

// Distance matrix -> epsilon selection -> groups -> splitting. Sentences
// without mass above zero_tol are left out of the result.
PairAlignment align_pair_detailed(const DocumentPair& pair, const EmbeddingTable& table,
                                  const AlignParams& params);

inline AlignmentSet align_pair(const DocumentPair& pair, const EmbeddingTable& table,
                               const AlignParams& params) {
  return align_pair_detailed(pair, table, params).alignment;
}

// Whole-document Gale-Church on token lengths; one-sided links are dropped.
AlignmentSet gc_align_pair(const DocumentPair& pair, const GCParams& params);

struct PairOutcome {
  std::string pair_id;
  std::optional<AlignmentSet> alignment;
  std::string error;  // set when alignment is empty
};

// Aligns each pair independently on `jobs` threads; a failing pair becomes an
// error record. The observer runs on the worker thread right after a pair
// succeeds, so it must be thread-safe when jobs > 1.
using PairObserver = std::function<void(const DocumentPair&, const PairAlignment&)>;

std::vector<PairOutcome> align_corpus(const Corpus& corpus, const EmbeddingTable& table,
                                      const AlignParams& params, std::size_t jobs = 1,
                                      const PairObserver& observer = {});

std::vector<PairOutcome> gc_align_corpus(const Corpus& corpus, const GCParams& params,
                                         std::size_t jobs = 1);

}  // namespace emdalign
