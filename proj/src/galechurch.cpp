#include "galechurch.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "error.hpp"

namespace emdalign {

PatternShape shape_of(Pattern p) {
  switch (p) {
    case Pattern::k1_1: return {1, 1};
    case Pattern::k1_0: return {1, 0};
    case Pattern::k0_1: return {0, 1};
    case Pattern::k2_1: return {2, 1};
    case Pattern::k1_2: return {1, 2};
    case Pattern::k2_2: return {2, 2};
  }
  throw ConfigError("unknown alignment pattern");
}

std::string_view pattern_name(Pattern p) {
  switch (p) {
    case Pattern::k1_1: return "1-1";
    case Pattern::k1_0: return "1-0";
    case Pattern::k0_1: return "0-1";
    case Pattern::k2_1: return "2-1";
    case Pattern::k1_2: return "1-2";
    case Pattern::k2_2: return "2-2";
  }
  throw ConfigError("unknown alignment pattern");
}

Pattern parse_pattern(std::string_view name) {
  for (auto p : kAllPatterns)
    if (pattern_name(p) == name) return p;
  throw ConfigError("unknown alignment pattern '" + std::string(name) + "'");
}

void validate_params(const GCParams& params) {
  if (!(params.c > 0.0) || !std::isfinite(params.c)) throw ConfigError("Gale-Church c must be > 0");
  if (!(params.s2 > 0.0) || !std::isfinite(params.s2))
    throw ConfigError("Gale-Church s2 must be > 0");
  double sum = 0.0;
  for (double p : params.priors) {
    if (!(p > 0.0)) throw ConfigError("Gale-Church priors must be positive");
    sum += p;
  }
  if (sum > 1.0 + 1e-9) throw ConfigError("Gale-Church priors sum above 1");
}

namespace {

// -log erfc(x) for x >= 0, using the asymptotic series once erfc underflows.
double neg_log_erfc(double x) {
  const double e = std::erfc(x);
  if (e > 1e-300) return -std::log(e);
  const double x2 = x * x;
  const double series = 1.0 - 1.0 / (2.0 * x2) + 3.0 / (4.0 * x2 * x2);
  return x2 + std::log(x * std::sqrt(std::numbers::pi)) - std::log(series);
}

}  // namespace

double gc_cost(std::size_t len_src, std::size_t len_tgt, Pattern pattern, const GCParams& params) {
  const auto idx = static_cast<std::size_t>(pattern);
  if (idx >= params.priors.size()) throw ConfigError("unknown alignment pattern");
  if (pattern == Pattern::k1_0) len_tgt = 0;
  if (pattern == Pattern::k0_1) len_src = 0;
  const double ls = static_cast<double>(len_src);
  const double lt = static_cast<double>(len_tgt);
  const double delta = (lt - ls * params.c) / std::sqrt(std::max(ls, 1.0) * params.s2);
  // Two-sided tail: P(|Z| >= |delta|) = erfc(|delta| / sqrt 2).
  return -std::log(params.priors[idx]) + neg_log_erfc(std::abs(delta) / std::numbers::sqrt2);
}

GCAlignment gc_align_detailed(std::span<const std::size_t> src, std::span<const std::size_t> tgt,
                              const GCParams& params) {
  validate_params(params);
  const std::size_t n = src.size(), m = tgt.size();
  const std::size_t width = m + 1;
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> cost((n + 1) * width, kInf);
  std::vector<signed char> move((n + 1) * width, -1);
  std::vector<std::size_t> src_prefix(n + 1, 0), tgt_prefix(m + 1, 0);
  for (std::size_t i = 0; i < n; ++i) src_prefix[i + 1] = src_prefix[i] + src[i];
  for (std::size_t j = 0; j < m; ++j) tgt_prefix[j + 1] = tgt_prefix[j] + tgt[j];

  cost[0] = 0.0;
  for (std::size_t i = 0; i <= n; ++i) {
    for (std::size_t j = 0; j <= m; ++j) {
      if (i == 0 && j == 0) continue;
      double best = kInf;
      signed char best_move = -1;
      for (auto p : kAllPatterns) {
        const auto [ds, dt] = shape_of(p);
        if (ds > i || dt > j) continue;
        const double prev = cost[(i - ds) * width + (j - dt)];
        if (prev == kInf) continue;
        const double c = prev + gc_cost(src_prefix[i] - src_prefix[i - ds],
                                        tgt_prefix[j] - tgt_prefix[j - dt], p, params);
        if (c < best) {
          best = c;
          best_move = static_cast<signed char>(p);
        }
      }
      cost[i * width + j] = best;
      move[i * width + j] = best_move;
    }
  }

  GCAlignment out;
  out.cost = cost[n * width + m];
  std::size_t i = n, j = m;
  while (i > 0 || j > 0) {
    const auto p = static_cast<Pattern>(move[i * width + j]);
    const auto [ds, dt] = shape_of(p);
    Link link;
    for (std::size_t k = i - ds; k < i; ++k) link.src.push_back(k);
    for (std::size_t k = j - dt; k < j; ++k) link.tgt.push_back(k);
    out.links.links.push_back(std::move(link));
    i -= ds;
    j -= dt;
  }
  std::reverse(out.links.links.begin(), out.links.links.end());
  return out;
}

double estimate_length_ratio(const Corpus& corpus) {
  std::size_t s = 0, t = 0;
  for (const auto& p : corpus) {
    s += p.source.token_count();
    t += p.target.token_count();
  }
  if (s == 0 || t == 0) return 1.0;
  return static_cast<double>(t) / static_cast<double>(s);
}

}  // namespace emdalign
