#pragma once

#include <array>
#include <span>
#include <string>
#include <string_view>

#include "corpus.hpp"

namespace emdalign {

// Moves in the order used for tie-breaking: (1,1) first, then by number of
// sentences consumed.
enum class Pattern { k1_1 = 0, k1_0, k0_1, k2_1, k1_2, k2_2 };

inline constexpr std::array<Pattern, 6> kAllPatterns = {
    Pattern::k1_1, Pattern::k1_0, Pattern::k0_1, Pattern::k2_1, Pattern::k1_2, Pattern::k2_2};

struct PatternShape {
  std::size_t src;
  std::size_t tgt;
};

PatternShape shape_of(Pattern p);
std::string_view pattern_name(Pattern p);
// Accepts "1-1", "1-0", "0-1", "2-1", "1-2", "2-2".
Pattern parse_pattern(std::string_view name);

struct GCParams {
  double c = 1.0;
  double s2 = 6.8;
  std::array<double, 6> priors = {0.89, 0.0099 / 2, 0.0099 / 2, 0.089 / 2, 0.089 / 2, 0.011};

  double prior(Pattern p) const { return priors[static_cast<std::size_t>(p)]; }
};

void validate_params(const GCParams& params);

// -log prior(pattern) - log P(|Z| >= |delta|), with
// delta = (len_tgt - len_src * c) / sqrt(max(len_src, 1) * s2).
// 1-0 ignores the target length and 0-1 the source length.
double gc_cost(std::size_t len_src, std::size_t len_tgt, Pattern pattern, const GCParams& params);

struct GCAlignment {
  AlignmentSet links;  // includes one-sided 1-0 / 0-1 links
  double cost = 0.0;
};

GCAlignment gc_align_detailed(std::span<const std::size_t> src_lengths,
                              std::span<const std::size_t> tgt_lengths, const GCParams& params);

inline AlignmentSet gc_align(std::span<const std::size_t> src_lengths,
                             std::span<const std::size_t> tgt_lengths, const GCParams& params) {
  return gc_align_detailed(src_lengths, tgt_lengths, params).links;
}

// Total target tokens over total source tokens.
double estimate_length_ratio(const Corpus& corpus);

}  // namespace emdalign
