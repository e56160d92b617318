#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "emd.hpp"
#include "error.hpp"
#include "oracles/lp_oracle.hpp"
#include "test_support.hpp"

using namespace emdalign;

namespace {

DistanceMatrix make_dm(std::vector<std::vector<double>> d, std::vector<double> ls,
                       std::vector<double> lt) {
  DistanceMatrix dm;
  dm.d = Matrix(d.size(), d.front().size());
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = 0; j < d[i].size(); ++j) dm.d(i, j) = d[i][j];
  dm.len_src = std::move(ls);
  dm.len_tgt = std::move(lt);
  return dm;
}

double oracle_value(const DistanceMatrix& dm, double eps, bool strict) {
  auto lp = oracle::transport_lp(testing::rows_of(dm.d), dm.len_src, dm.len_tgt, eps, strict);
  auto v = oracle::simplex(lp);
  REQUIRE(v.has_value());
  return static_cast<double>(*v);
}

Matrix from_rows(std::vector<std::vector<double>> rows) {
  Matrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return m;
}

}  // namespace

TEST_CASE("1x1 problem puts all mass on the single cell") {
  auto dm = make_dm({{7.0}}, {1.0}, {1.0});
  auto strict = solve_strict(dm);
  CHECK(strict.p(0, 0) == doctest::Approx(1.0));
  CHECK(strict.objective == doctest::Approx(7.0));
  auto relaxed = solve_relaxed(dm, 0.3);
  CHECK(relaxed.p(0, 0) == doctest::Approx(1.0));
  CHECK(relaxed.objective == doctest::Approx(7.0));
}

TEST_CASE("2x2 diagonal example") {
  auto dm = make_dm({{1.0, 2.0}, {2.0, 1.0}}, {0.5, 0.5}, {0.5, 0.5});
  auto plan = solve_strict(dm);
  CHECK(plan.feasible);
  CHECK(plan.p(0, 0) == doctest::Approx(0.5));
  CHECK(plan.p(1, 1) == doctest::Approx(0.5));
  CHECK(plan.p(0, 1) == doctest::Approx(0.0));
  CHECK(plan.p(1, 0) == doctest::Approx(0.0));
  CHECK(plan.objective == doctest::Approx(1.0));
}

TEST_CASE("relaxation lets mass concentrate on cheap cells") {
  auto dm = make_dm({{1.0, 5.0}, {5.0, 9.0}}, {0.5, 0.5}, {0.5, 0.5});
  // strict: col 1 needs 0.5; rows 0 and 1 share. Optimum 0.5*1 + 0.5*... via oracle
  CHECK(solve_strict(dm).objective == doctest::Approx(oracle_value(dm, 0.0, true)));
  auto full = solve_relaxed(dm, 1.0);
  // caps become 1.0 on every line: all mass on (0,0)
  CHECK(full.p(0, 0) == doctest::Approx(1.0));
  CHECK(full.objective == doctest::Approx(1.0));
}

TEST_CASE("epsilon = 1 moves all mass to the cheapest cell when caps allow it") {
  // With uniform lengths on at most two lines per side every cap reaches 1.
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> cost(1.0, 100.0);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + trial % 2, m = 1 + (trial / 2) % 2;
    DistanceMatrix dm;
    dm.d = Matrix(n, m);
    for (auto& v : dm.d.values()) v = cost(rng);
    dm.len_src.assign(n, 1.0 / n);
    dm.len_tgt.assign(m, 1.0 / m);
    auto plan = solve_relaxed(dm, 1.0);
    std::size_t arg = 0;
    for (std::size_t k = 1; k < dm.d.values().size(); ++k)
      if (dm.d.values()[k] < dm.d.values()[arg]) arg = k;
    CHECK(plan.p.values()[arg] == doctest::Approx(1.0));
    CHECK(plan.objective == doctest::Approx(dm.d.values()[arg]).epsilon(1e-12));
  }
}

TEST_CASE("solvers agree with the simplex oracle on random instances") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + trial % 5, m = 1 + (trial * 7) % 5;
    auto dm = testing::random_instance(rng, n, m);
    const double strict = solve_strict(dm).objective;
    CHECK(strict == doctest::Approx(oracle_value(dm, 0.0, true)).epsilon(1e-9));
    for (double eps : {0.0, 0.05, 0.2, 0.7}) {
      auto plan = solve_relaxed(dm, eps);
      CHECK(plan.objective == doctest::Approx(oracle_value(dm, eps, false)).epsilon(1e-9));
      CHECK(audit_plan(dm, plan.p, eps, false).ok);
    }
  }
}

TEST_CASE("simplex oracle matches vertex enumeration on tiny instances") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    auto dm = testing::random_instance(rng, 2, 2 + trial % 2);
    for (double eps : {0.0, 0.1}) {
      for (bool strict : {true, false}) {
        if (strict && eps > 0.0) continue;
        auto lp = oracle::transport_lp(testing::rows_of(dm.d), dm.len_src, dm.len_tgt, eps, strict);
        auto a = oracle::simplex(lp);
        auto b = oracle::vertex_enumeration(lp);
        REQUIRE(a.has_value());
        REQUIRE(b.has_value());
        CHECK(static_cast<double>(*a) == doctest::Approx(static_cast<double>(*b)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("relaxed at epsilon 0 matches strict, and objective falls as epsilon grows") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 40; ++trial) {
    auto dm = testing::random_instance(rng, 2 + trial % 4, 2 + (trial / 3) % 4);
    CHECK(solve_relaxed(dm, 0.0).objective ==
          doctest::Approx(solve_strict(dm).objective).epsilon(1e-10));
    double prev = std::numeric_limits<double>::infinity();
    for (double eps : {0.0, 0.05, 0.1, 0.2, 0.5, 1.0}) {
      const double obj = solve_relaxed(dm, eps).objective;
      CHECK(obj <= prev + 1e-12);
      prev = obj;
    }
  }
}

TEST_CASE("plans satisfy the audited constraints") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    auto dm = testing::random_instance(rng, 1 + trial % 6, 1 + (trial / 2) % 6);
    auto strict = solve_strict(dm);
    auto audit = audit_plan(dm, strict.p, 0.0, true);
    CHECK(audit.ok);
    CHECK(audit.mass_error <= 1e-12);
    CHECK(audit.min_entry >= 0.0);
    auto relaxed = solve_relaxed(dm, 0.1);
    CHECK(audit_plan(dm, relaxed.p, 0.1, false).ok);
  }
}

TEST_CASE("audit rejects infeasible plans") {
  auto dm = make_dm({{1.0, 2.0}, {2.0, 1.0}}, {0.5, 0.5}, {0.5, 0.5});
  CHECK_FALSE(audit_plan(dm, from_rows({{1.0, 0.0}, {0.0, 0.0}}), 0.0, true).ok);
  CHECK(audit_plan(dm, from_rows({{0.5, 0.0}, {0.0, 0.5}}), 0.0, true).ok);
  CHECK_FALSE(audit_plan(dm, from_rows({{0.6, 0.0}, {0.0, 0.4}}), 0.0, false).ok);
  CHECK(audit_plan(dm, from_rows({{0.6, 0.0}, {0.0, 0.4}}), 0.2, false).ok);
  CHECK_FALSE(audit_plan(dm, from_rows({{0.6, -0.1}, {0.0, 0.5}}), 0.2, false).ok);
  CHECK_FALSE(audit_plan(dm, from_rows({{0.3, 0.0}, {0.0, 0.3}}), 0.2, false).ok);
}

TEST_CASE("epsilon outside [0, 1] is a configuration error") {
  auto dm = make_dm({{1.0}}, {1.0}, {1.0});
  CHECK_THROWS_AS(solve_relaxed(dm, -0.1), ConfigError);
  CHECK_THROWS_AS(solve_relaxed(dm, 1.5), ConfigError);
  CHECK_THROWS_AS(solve_relaxed(dm, std::nan("")), ConfigError);
}

TEST_CASE("submatrix penalty worked values") {
  CHECK(submatrix_penalty(from_rows({{0.3, 0.2}, {0.1, 0.4}})) == doctest::Approx(0.1));
  CHECK(submatrix_penalty(from_rows({{0.2, 0.1, 0.0}, {0.1, 0.2, 0.05}, {0.0, 0.05, 0.3}})) ==
        doctest::Approx(0.15));
  CHECK(submatrix_penalty(from_rows({{0.5, 0.0}, {0.0, 0.5}})) == 0.0);
  CHECK(submatrix_penalty(from_rows({{0.25, 0.25}, {0.25, 1e-7}})) == 0.0);
  CHECK(submatrix_penalty(from_rows({{0.25, 0.25}, {0.25, 1e-7}}), 1e-8) == doctest::Approx(1e-7));
}

TEST_CASE("penalty is zero for single-row or single-column plans") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.01, 1.0);
  for (std::size_t m = 1; m < 8; ++m) {
    Matrix row(1, m), col(m, 1);
    for (auto& v : row.values()) v = u(rng);
    for (auto& v : col.values()) v = u(rng);
    CHECK(submatrix_penalty(row) == 0.0);
    CHECK(submatrix_penalty(col) == 0.0);
  }
}

TEST_CASE("select_epsilon trades penalty against epsilon") {
  std::mt19937_64 rng(99);
  auto grid = default_epsilon_grid();
  REQUIRE(grid.size() == 24);
  CHECK(grid.front() == 0.0);
  CHECK(grid.back() == 1.0);

  SUBCASE("huge gamma picks the smallest epsilon") {
    for (int trial = 0; trial < 10; ++trial) {
      auto dm = testing::random_instance(rng, 4, 4);
      auto sel = select_epsilon(dm, 1e9, grid);
      CHECK(sel.epsilon == 0.0);
      CHECK(sel.candidates.size() == grid.size());
    }
  }
  SUBCASE("gamma 0 with zero penalty everywhere keeps the smallest epsilon") {
    auto dm = make_dm({{1.0, 9.0}, {9.0, 1.0}}, {0.5, 0.5}, {0.5, 0.5});
    auto sel = select_epsilon(dm, 0.0, grid);
    CHECK(sel.epsilon == 0.0);
    CHECK(sel.score == 0.0);
  }
  SUBCASE("score is penalty + gamma * epsilon and the choice is the minimum") {
    for (int trial = 0; trial < 10; ++trial) {
      auto dm = testing::random_instance(rng, 3 + trial % 3, 3);
      auto sel = select_epsilon(dm, 1.0, grid);
      double best = std::numeric_limits<double>::infinity();
      for (const auto& c : sel.candidates) {
        CHECK(c.score == doctest::Approx(c.penalty + c.epsilon));
        best = std::min(best, c.score);
      }
      CHECK(sel.score == best);
      CHECK(sel.plan.epsilon == sel.epsilon);
    }
  }
  SUBCASE("bad gamma or grid") {
    auto dm = make_dm({{1.0}}, {1.0}, {1.0});
    CHECK_THROWS_AS(select_epsilon(dm, -1.0, grid), ConfigError);
    std::vector<double> empty;
    CHECK_THROWS_AS(select_epsilon(dm, 1.0, empty), ConfigError);
  }
}

TEST_CASE("plan tsv marks near-zero entries as zero") {
  std::ostringstream out;
  write_plan_tsv(out, from_rows({{0.5, 1e-9}, {0.0, 0.5}}));
  CHECK(out.str() == "0.5\t0\n0\t0.5\n");
}
