#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "error.hpp"
#include "galechurch.hpp"
#include "oracles/gc_oracle.hpp"

using namespace emdalign;

namespace {

std::vector<Link> expected(std::initializer_list<std::pair<std::vector<std::size_t>,
                                                           std::vector<std::size_t>>> links) {
  std::vector<Link> out;
  for (const auto& [s, t] : links) out.push_back({s, t, std::nullopt});
  return out;
}

}  // namespace

// Reference values computed independently in double precision.
TEST_CASE("gc_cost frozen values") {
  GCParams p;
  CHECK(gc_cost(10, 10, Pattern::k1_1, p) == doctest::Approx(0.11653381625595151).epsilon(1e-12));
  CHECK(gc_cost(10, 12, Pattern::k1_1, p) == doctest::Approx(0.3292752131678574).epsilon(1e-12));
  CHECK(gc_cost(5, 0, Pattern::k1_0, p) == doctest::Approx(6.246974283905222).epsilon(1e-12));
  CHECK(gc_cost(0, 5, Pattern::k0_1, p) == doctest::Approx(8.20542181977207).epsilon(1e-12));
}

TEST_CASE("one-sided moves ignore the other side") {
  GCParams p;
  CHECK(gc_cost(5, 0, Pattern::k1_0, p) == gc_cost(5, 99, Pattern::k1_0, p));
  CHECK(gc_cost(0, 5, Pattern::k0_1, p) == gc_cost(42, 5, Pattern::k0_1, p));
}

TEST_CASE("cost grows with the length mismatch and stays finite in the tail") {
  GCParams p;
  double prev = gc_cost(20, 20, Pattern::k1_1, p);
  for (std::size_t lt = 21; lt < 2000; lt += 7) {
    const double c = gc_cost(20, lt, Pattern::k1_1, p);
    CHECK(std::isfinite(c));
    CHECK(c > prev);
    prev = c;
  }
  // symmetric in the sign of delta
  CHECK(gc_cost(20, 25, Pattern::k1_1, p) == doctest::Approx(gc_cost(20, 15, Pattern::k1_1, p)));
  // deep tail: compare against extended-precision erfc, which does not underflow here
  p.s2 = 1.0;
  for (std::size_t lt = 2; lt <= 60; ++lt) {
    const long double x = static_cast<long double>(lt - 1) / std::sqrt(2.0L);
    const long double ref = -std::log(static_cast<long double>(p.priors[0])) - std::log(std::erfc(x));
    CHECK(gc_cost(1, lt, Pattern::k1_1, p) ==
          doctest::Approx(static_cast<double>(ref)).epsilon(1e-6));
  }
}

TEST_CASE("pattern names round-trip") {
  for (auto pat : kAllPatterns) CHECK(parse_pattern(pattern_name(pat)) == pat);
  CHECK(shape_of(Pattern::k2_1).src == 2);
  CHECK(shape_of(Pattern::k2_1).tgt == 1);
  CHECK_THROWS_AS(parse_pattern("3-1"), ConfigError);
  CHECK_THROWS_AS(parse_pattern(""), ConfigError);
}

TEST_CASE("parameter validation") {
  GCParams p;
  CHECK_NOTHROW(validate_params(p));
  p.c = 0.0;
  CHECK_THROWS_AS(validate_params(p), ConfigError);
  p = {};
  p.s2 = -1.0;
  CHECK_THROWS_AS(validate_params(p), ConfigError);
  p = {};
  p.priors[0] = 0.0;
  CHECK_THROWS_AS(validate_params(p), ConfigError);
  p = {};
  p.priors[0] = 0.99;
  CHECK_THROWS_AS(validate_params(p), ConfigError);
  p = {};
  p.priors = {0.89, 0.0099, 0.0099, 0.089 / 2, 0.089 / 2, 0.011};  // sums to 1.0099
  CHECK_THROWS_AS(validate_params(p), ConfigError);
}

TEST_CASE("gc_align worked examples") {
  GCParams p;
  SUBCASE("two short sentences merge into one") {
    std::vector<std::size_t> s = {10, 12}, t = {22};
    auto r = gc_align_detailed(s, t, p);
    CHECK(r.links.links == expected({{{0, 1}, {0}}}));
    CHECK(r.cost == doctest::Approx(3.1122660898099426).epsilon(1e-12));
  }
  SUBCASE("matching lengths align one to one") {
    std::vector<std::size_t> s = {10, 20, 30}, t = {11, 19, 31};
    auto r = gc_align_detailed(s, t, p);
    CHECK(r.links.links == expected({{{0}, {0}}, {{1}, {1}}, {{2}, {2}}}));
    CHECK(r.cost == doctest::Approx(0.5793209494636966).epsilon(1e-12));
  }
  SUBCASE("empty sides") {
    std::vector<std::size_t> s = {4, 5}, none;
    CHECK(gc_align(s, none, p).links == expected({{{0}, {}}, {{1}, {}}}));
    CHECK(gc_align(none, s, p).links == expected({{{}, {0}}, {{}, {1}}}));
    CHECK(gc_align(none, none, p).links.empty());
  }
}

TEST_CASE("dynamic program equals exhaustive search") {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> count(0, 5), len(1, 40);
  GCParams p;
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<std::size_t> s(count(rng)), t(count(rng));
    for (auto& v : s) v = len(rng);
    for (auto& v : t) v = len(rng);
    auto dp = gc_align_detailed(s, t, p);
    auto brute = oracle::gc_brute_force(s, t, p);
    CHECK(dp.cost == doctest::Approx(brute.best).epsilon(1e-12));
  }
}

TEST_CASE("output is monotone, contiguous and covering (property)") {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<int> count(0, 12), len(1, 60);
  GCParams p;
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::size_t> s(count(rng)), t(count(rng));
    for (auto& v : s) v = len(rng);
    for (auto& v : t) v = len(rng);
    auto links = gc_align(s, t, p).links;
    std::size_t next_s = 0, next_t = 0;
    for (const auto& l : links) {
      CHECK(l.src.size() + l.tgt.size() >= 1);
      CHECK(l.src.size() <= 2);
      CHECK(l.tgt.size() <= 2);
      for (auto i : l.src) CHECK(i == next_s++);
      for (auto j : l.tgt) CHECK(j == next_t++);
    }
    CHECK(next_s == s.size());
    CHECK(next_t == t.size());
  }
}

TEST_CASE("length ratio estimate") {
  Corpus corpus;
  corpus.push_back({"a", {"s", "en", {{"a", "b"}, {"c"}}}, {"t", "xx", {{"x", "y", "z"}}}});
  corpus.push_back({"b", {"s", "en", {{"a"}}}, {"t", "xx", {{"x", "y", "z"}}}});
  CHECK(estimate_length_ratio(corpus) == doctest::Approx(6.0 / 4.0));
  CHECK(estimate_length_ratio({}) == 1.0);
}
