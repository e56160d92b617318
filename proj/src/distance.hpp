#pragma once

#include <iosfwd>
#include <string_view>
#include <vector>

#include "corpus.hpp"
#include "embedding_table.hpp"
#include "matrix.hpp"

namespace emdalign {

inline constexpr double kDefaultSimFloor = 0.01;

struct DistanceMatrix {
  Matrix d;                      // n x m, D_ij = d1 + alpha * d2
  std::vector<double> len_src;   // token_count(s_i) / N
  std::vector<double> len_tgt;   // token_count(t_j) / M
  std::vector<double> pos_src;   // prefix token share before s_i
  std::vector<double> pos_tgt;
  double alpha = 1.0;

  std::size_t rows() const noexcept { return d.rows(); }
  std::size_t cols() const noexcept { return d.cols(); }
};

// Reciprocal of the mean best-match cosine from tokens of `s` into `t`,
// the mean clamped to [sim_floor, 1]. OOV tokens are skipped; a side with no
// in-vocabulary token yields 1 / sim_floor.
double word_distance_d1(const Sentence& s, std::string_view s_lang, const Sentence& t,
                        std::string_view t_lang, const EmbeddingTable& table,
                        double sim_floor = kDefaultSimFloor);

inline double positional_distance_d2(double pos_s, double pos_t) {
  const double diff = pos_s > pos_t ? pos_s - pos_t : pos_t - pos_s;
  return diff * diff * diff;
}

double sentence_position(const Document& doc, std::size_t i);

DistanceMatrix build_distance_matrix(const DocumentPair& pair, const EmbeddingTable& table,
                                     double alpha = 1.0, double sim_floor = kDefaultSimFloor);

// Checks non-negativity, finiteness and normalisation of the length vectors.
void validate_distance_matrix(const DistanceMatrix& dm);

// Tab-separated, one row per source sentence.
void write_distance_tsv(std::ostream& out, const DistanceMatrix& dm);

}  // namespace emdalign
