#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "distance.hpp"
#include "error.hpp"
#include "test_support.hpp"

using namespace emdalign;
using testing::doc;

namespace {

// a ~ x exactly, b at 60 degrees from x, c orthogonal to everything on the xx side.
EmbeddingTable small_table() {
  const float h = static_cast<float>(std::sqrt(3.0) / 2.0);
  return testing::table_of({{"en:a", {1.0f, 0.0f, 0.0f}},
                            {"en:b", {0.5f, h, 0.0f}},
                            {"en:c", {0.0f, 0.0f, 1.0f}},
                            {"xx:x", {1.0f, 0.0f, 0.0f}},
                            {"xx:y", {0.0f, 1.0f, 0.0f}}});
}

}  // namespace

TEST_CASE("d1 worked values") {
  auto table = small_table();
  CHECK(word_distance_d1({"a"}, "en", {"x"}, "xx", table) == doctest::Approx(1.0));
  CHECK(word_distance_d1({"b"}, "en", {"x"}, "xx", table) == doctest::Approx(2.0));
  CHECK(word_distance_d1({"q", "r"}, "en", {"x"}, "xx", table) == doctest::Approx(100.0));
  CHECK(word_distance_d1({"a"}, "en", {"zz"}, "xx", table) == doctest::Approx(100.0));
  CHECK(word_distance_d1({"a"}, "en", {"x"}, "xx", table, 0.5) == doctest::Approx(1.0));
  CHECK(word_distance_d1({"q"}, "en", {"x"}, "xx", table, 0.5) == doctest::Approx(2.0));
}

TEST_CASE("d1 averages best matches over in-vocabulary tokens only") {
  auto table = small_table();
  // a -> x (1.0), b -> x (0.5): mean 0.75; the OOV token is skipped.
  CHECK(word_distance_d1({"a", "b", "oov"}, "en", {"x"}, "xx", table) ==
        doctest::Approx(1.0 / 0.75));
  // with y available b prefers it (cos 60 vs 30 degrees)
  CHECK(word_distance_d1({"a", "b"}, "en", {"x", "y"}, "xx", table) ==
        doctest::Approx(2.0 / (1.0 + std::sqrt(3.0) / 2.0)));
  // c has cosine 0 with everything: mean clamps to the floor.
  CHECK(word_distance_d1({"c"}, "en", {"x", "y"}, "xx", table) == doctest::Approx(100.0));
}

TEST_CASE("d1 stays within [1, 1/sim_floor]") {
  std::mt19937_64 rng(3);
  std::normal_distribution<float> g;
  std::vector<std::pair<std::string, std::vector<float>>> rows;
  for (int w = 0; w < 20; ++w) {
    for (const char* lang : {"en", "xx"}) {
      std::vector<float> v(8);
      for (auto& x : v) x = g(rng);
      rows.push_back({std::string(lang) + ":w" + std::to_string(w), v});
    }
  }
  auto table = testing::table_of(rows);
  std::uniform_int_distribution<int> word(0, 24), len(1, 6);
  for (int trial = 0; trial < 500; ++trial) {
    Sentence s, t;
    for (int k = len(rng); k > 0; --k) s.push_back("w" + std::to_string(word(rng)));
    for (int k = len(rng); k > 0; --k) t.push_back("w" + std::to_string(word(rng)));
    const double d = word_distance_d1(s, "en", t, "xx", table);
    CHECK(d >= 1.0);
    CHECK(d <= 100.0 + 1e-9);
  }
}

TEST_CASE("d2 worked values") {
  CHECK(positional_distance_d2(0.2, 0.4) == doctest::Approx(0.008));
  CHECK(positional_distance_d2(0.4, 0.2) == doctest::Approx(0.008));
  CHECK(positional_distance_d2(0.3, 0.3) == 0.0);
  CHECK(positional_distance_d2(0.0, 1.0) == 1.0);
}

TEST_CASE("sentence_position is the share of tokens before the sentence") {
  auto d = doc("en", {{"a", "b"}, {"c", "d", "e"}, {"f", "g", "h", "i", "j"}});
  CHECK(sentence_position(d, 0) == 0.0);
  CHECK(sentence_position(d, 1) == doctest::Approx(0.2));
  CHECK(sentence_position(d, 2) == doctest::Approx(0.5));
}

TEST_CASE("distance matrix structure") {
  auto table = small_table();
  DocumentPair pair{"p", doc("en", {{"a"}, {"b", "c"}, {"a", "b", "c"}}),
                    doc("xx", {{"x", "y"}, {"y"}})};

  SUBCASE("shape, lengths and lower bound") {
    auto dm = build_distance_matrix(pair, table);
    REQUIRE(dm.rows() == 3);
    REQUIRE(dm.cols() == 2);
    double sum_s = 0.0, sum_t = 0.0;
    for (double v : dm.len_src) sum_s += v;
    for (double v : dm.len_tgt) sum_t += v;
    CHECK(sum_s == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sum_t == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(dm.len_src[0] == doctest::Approx(1.0 / 6));
    CHECK(dm.len_tgt[0] == doctest::Approx(2.0 / 3));
    for (double v : dm.d.values()) CHECK(v >= 1.0);
    CHECK_NOTHROW(validate_distance_matrix(dm));
  }

  SUBCASE("entries are d1 + alpha * d2") {
    for (double alpha : {0.0, 1.0, 3.5}) {
      auto dm = build_distance_matrix(pair, table, alpha);
      for (std::size_t i = 0; i < dm.rows(); ++i) {
        for (std::size_t j = 0; j < dm.cols(); ++j) {
          const double d1 = word_distance_d1(pair.source.sentences[i], "en",
                                             pair.target.sentences[j], "xx", table);
          const double d2 = positional_distance_d2(sentence_position(pair.source, i),
                                                   sentence_position(pair.target, j));
          CHECK(dm.d(i, j) == doctest::Approx(d1 + alpha * d2).epsilon(1e-12));
        }
      }
    }
  }

  SUBCASE("alpha = 0 gives d1 alone") {
    auto dm = build_distance_matrix(pair, table, 0.0);
    CHECK(dm.d(0, 0) == doctest::Approx(1.0));
  }
}

TEST_CASE("scaling every sentence length leaves the matrix unchanged") {
  auto table = small_table();
  DocumentPair pair{"p", doc("en", {{"a"}, {"b", "c"}, {"c"}}), doc("xx", {{"x"}, {"y", "x"}})};
  DocumentPair doubled = pair;
  for (auto* d : {&doubled.source, &doubled.target}) {
    for (auto& s : d->sentences) {
      Sentence twice;
      for (const auto& t : s) {
        twice.push_back(t);
        twice.push_back(t);
      }
      s = twice;
    }
  }
  auto a = build_distance_matrix(pair, table);
  auto b = build_distance_matrix(doubled, table);
  for (std::size_t k = 0; k < a.d.values().size(); ++k)
    CHECK(a.d.values()[k] == doctest::Approx(b.d.values()[k]).epsilon(1e-12));
  for (std::size_t i = 0; i < a.len_src.size(); ++i)
    CHECK(a.len_src[i] == doctest::Approx(b.len_src[i]));
}

TEST_CASE("distance matrix validation") {
  DistanceMatrix dm;
  dm.d = Matrix(1, 1);
  dm.d(0, 0) = 1.0;
  dm.len_src = {1.0};
  dm.len_tgt = {1.0};
  CHECK_NOTHROW(validate_distance_matrix(dm));
  dm.len_tgt = {0.5};
  CHECK_THROWS_AS(validate_distance_matrix(dm), ValidationError);
  dm.len_tgt = {1.0};
  dm.d(0, 0) = std::nan("");
  CHECK_THROWS_AS(validate_distance_matrix(dm), ValidationError);
  dm.d(0, 0) = -1.0;
  CHECK_THROWS_AS(validate_distance_matrix(dm), ValidationError);
}

TEST_CASE("distance tsv has one row per source sentence") {
  auto table = small_table();
  DocumentPair pair{"p", doc("en", {{"a"}, {"b"}}), doc("xx", {{"x"}, {"y"}, {"x"}})};
  std::ostringstream out;
  write_distance_tsv(out, build_distance_matrix(pair, table));
  std::istringstream in(out.str());
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    CHECK(std::count(line.begin(), line.end(), '\t') == 2);
  }
  CHECK(rows == 2);
}
