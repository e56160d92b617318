#include "eval.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>

#include <json.hpp>

#include "error.hpp"

namespace emdalign {

Stratum stratum_of(const Link& link) {
  const std::size_t lo = std::min(link.src.size(), link.tgt.size());
  const std::size_t hi = std::max(link.src.size(), link.tgt.size());
  if (lo == 0) return Stratum::kOneSided;
  if (hi == 1) return Stratum::kOneToOne;
  return Stratum::kNToM;
}

double f1_score(double precision, double recall) {
  const double s = precision + recall;
  return s > 0.0 ? 2.0 * precision * recall / s : 0.0;
}

namespace {

void finish(StratumScore& s) {
  s.precision = s.extracted ? static_cast<double>(s.correct) / static_cast<double>(s.extracted) : 0.0;
  s.recall = s.gold ? static_cast<double>(s.correct) / static_cast<double>(s.gold) : 0.0;
  s.f1 = f1_score(s.precision, s.recall);
}

using LinkKey = std::pair<std::vector<std::size_t>, std::vector<std::size_t>>;

}  // namespace

EvalReport evaluate(const AlignmentMap& system, const AlignmentMap& gold) {
  for (const auto& [id, _] : system) {
    if (!gold.count(id)) throw ValidationError("pair '" + id + "': present in system output but not in gold");
  }
  EvalReport r;
  auto bucket = [&](Stratum s) -> StratumScore* {
    switch (s) {
      case Stratum::kOneToOne: return &r.one_to_one;
      case Stratum::kNToM: return &r.n_to_m;
      case Stratum::kOneSided: return nullptr;
    }
    return nullptr;
  };

  for (const auto& [id, gold_set] : gold) {
    std::set<LinkKey> gold_links;
    for (const auto& link : gold_set.links) {
      gold_links.emplace(link.src, link.tgt);
      ++r.overall.gold;
      if (auto* b = bucket(stratum_of(link))) ++b->gold;
      else ++r.one_sided_gold;
    }
    auto sys = system.find(id);
    if (sys == system.end()) continue;
    std::set<LinkKey> counted;
    for (const auto& link : sys->second.links) {
      const Stratum s = stratum_of(link);
      StratumScore* b = bucket(s);
      ++r.overall.extracted;
      if (b) ++b->extracted;
      else ++r.one_sided_extracted;
      LinkKey key{link.src, link.tgt};
      if (gold_links.count(key) && counted.insert(key).second) {
        ++r.overall.correct;
        if (b) ++b->correct;
      }
    }
  }
  finish(r.overall);
  finish(r.one_to_one);
  finish(r.n_to_m);
  return r;
}

namespace {

std::string pct(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v * 100.0);
  return buf;
}

nlohmann::json stratum_json(const StratumScore& s) {
  return {{"precision", s.precision}, {"recall", s.recall}, {"f1", s.f1},
          {"correct", s.correct},     {"extracted", s.extracted}, {"gold", s.gold}};
}

}  // namespace

std::string report_table(const std::vector<NamedReport>& reports) {
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"method", "1-1 P", "1-1 R", "1-1 F1", "n-m P", "n-m R", "n-m F1", "all P",
                  "all R", "all F1"});
  for (const auto& [name, r] : reports) {
    rows.push_back({name, pct(r.one_to_one.precision), pct(r.one_to_one.recall),
                    pct(r.one_to_one.f1), pct(r.n_to_m.precision), pct(r.n_to_m.recall),
                    pct(r.n_to_m.f1), pct(r.overall.precision), pct(r.overall.recall),
                    pct(r.overall.f1)});
  }
  std::vector<std::size_t> width(rows.front().size(), 0);
  for (const auto& row : rows)
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  std::ostringstream out;
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c == 0) {
        out << row[c] << std::string(width[c] - row[c].size(), ' ');
      } else {
        out << "  " << std::string(width[c] - row[c].size(), ' ') << row[c];
      }
    }
    out << '\n';
  }
  return out.str();
}

std::string report_json(const std::vector<NamedReport>& reports) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [name, r] : reports) {
    arr.push_back({{"method", name},
                   {"one_to_one", stratum_json(r.one_to_one)},
                   {"n_to_m", stratum_json(r.n_to_m)},
                   {"overall", stratum_json(r.overall)},
                   {"one_sided_gold", r.one_sided_gold},
                   {"one_sided_extracted", r.one_sided_extracted}});
  }
  return arr.dump(2) + "\n";
}

}  // namespace emdalign
