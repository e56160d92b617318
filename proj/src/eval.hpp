#pragma once

#include <string>
#include <utility>
#include <vector>

#include "corpus.hpp"

namespace emdalign {

enum class Stratum { kOneToOne, kNToM, kOneSided };

// 1-to-1: |src| = |tgt| = 1; n-to-m: max > 1 and min >= 1; otherwise one-sided.
Stratum stratum_of(const Link& link);

struct StratumScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t correct = 0;
  std::size_t extracted = 0;
  std::size_t gold = 0;
};

struct EvalReport {
  StratumScore overall;
  StratumScore one_to_one;
  StratumScore n_to_m;
  std::size_t one_sided_gold = 0;
  std::size_t one_sided_extracted = 0;
};

// 2pr / (p + r), 0 when p + r = 0.
double f1_score(double precision, double recall);

// Exact (src set, tgt set) matching per pair_id. Throws ValidationError when
// a system pair_id is absent from gold.
EvalReport evaluate(const AlignmentMap& system, const AlignmentMap& gold);

using NamedReport = std::pair<std::string, EvalReport>;

// One row per method in input order; percentages with two decimals.
std::string report_table(const std::vector<NamedReport>& reports);
std::string report_json(const std::vector<NamedReport>& reports);

}  // namespace emdalign
