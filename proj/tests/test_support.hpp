#pragma once

#include <atomic>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "corpus.hpp"
#include "distance.hpp"
#include "embedding_table.hpp"

namespace testing {

inline std::filesystem::path temp_dir(const std::string& tag) {
  static std::atomic<int> counter{0};
  auto dir = std::filesystem::temp_directory_path() /
             ("emdalign_" + tag + "_" + std::to_string(::getpid()) + "_" +
              std::to_string(counter++));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline void write_text(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

inline std::string read_text(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline emdalign::Document doc(const std::string& lang,
                              std::vector<std::vector<std::string>> sentences,
                              const std::string& id = "d") {
  return {id, lang, std::move(sentences)};
}

// Random normalised weights with every entry > 0.
inline std::vector<double> random_lengths(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> tokens(1, 30);
  std::vector<double> v(n);
  double total = 0.0;
  std::vector<int> raw(n);
  for (auto& r : raw) {
    r = tokens(rng);
    total += r;
  }
  for (std::size_t i = 0; i < n; ++i) v[i] = raw[i] / total;
  return v;
}

inline emdalign::DistanceMatrix random_instance(std::mt19937_64& rng, std::size_t n,
                                                std::size_t m) {
  std::uniform_real_distribution<double> cost(1.0, 100.0);
  emdalign::DistanceMatrix dm;
  dm.d = emdalign::Matrix(n, m);
  for (auto& v : dm.d.values()) v = cost(rng);
  dm.len_src = random_lengths(rng, n);
  dm.len_tgt = random_lengths(rng, m);
  return dm;
}

inline std::vector<std::vector<double>> rows_of(const emdalign::Matrix& mat) {
  std::vector<std::vector<double>> out(mat.rows(), std::vector<double>(mat.cols()));
  for (std::size_t i = 0; i < mat.rows(); ++i)
    for (std::size_t j = 0; j < mat.cols(); ++j) out[i][j] = mat(i, j);
  return out;
}

// Table with hand-set vectors; keys must be "<lang>:<surface>".
inline emdalign::EmbeddingTable table_of(
    const std::vector<std::pair<std::string, std::vector<float>>>& rows) {
  std::vector<std::string> keys;
  std::vector<float> flat;
  const std::size_t dim = rows.front().second.size();
  for (const auto& [k, v] : rows) {
    keys.push_back(k);
    flat.insert(flat.end(), v.begin(), v.end());
  }
  return emdalign::EmbeddingTable(dim, std::move(keys), std::move(flat));
}

}  // namespace testing
