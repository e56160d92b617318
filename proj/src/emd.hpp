#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "distance.hpp"
#include "matrix.hpp"

namespace emdalign {

inline constexpr double kDefaultZeroTol = 1e-6;

struct TransportPlan {
  Matrix p;
  double objective = 0.0;
  double epsilon = 0.0;
  bool feasible = false;
  std::size_t augmentations = 0;
};

// Post-hoc constraint check, independent of the solver.
struct PlanAudit {
  double mass_error = 0.0;       // |sum P - 1|
  double row_violation = 0.0;    // max(row sum - row cap), <= 0 when satisfied
  double col_violation = 0.0;    // max(col sum - col cap) (two-sided when strict)
  double min_entry = 0.0;
  bool ok = false;
};

// Audits against the relaxed constraint set for `epsilon`; with `strict`
// the column sums must equal len_tgt exactly (within tolerance).
PlanAudit audit_plan(const DistanceMatrix& dm, const Matrix& p, double epsilon, bool strict);

// min sum D_ij P_ij  s.t. row sums <= len_src, column sums = len_tgt, P >= 0.
TransportPlan solve_strict(const DistanceMatrix& dm);

// min sum D_ij P_ij  s.t. row sums <= len_src + eps/n, column sums
// <= len_tgt + eps/m, sum P = 1, P >= 0.
TransportPlan solve_relaxed(const DistanceMatrix& dm, double epsilon);

// Sum over contiguous 2x2 blocks whose four entries all exceed zero_tol of
// the smallest entry in the block.
double submatrix_penalty(const Matrix& p, double zero_tol = kDefaultZeroTol);

struct EpsilonCandidate {
  double epsilon = 0.0;
  double penalty = 0.0;
  double score = 0.0;
  double objective = 0.0;
};

struct EpsilonSelection {
  TransportPlan plan;
  double epsilon = 0.0;
  double score = 0.0;
  std::vector<EpsilonCandidate> candidates;  // grid order
};

std::vector<double> default_epsilon_grid();

// Minimises penalty(plan_eps) + gamma * eps over the grid; exact score ties go
// to the smaller eps.
EpsilonSelection select_epsilon(const DistanceMatrix& dm, double gamma,
                                std::span<const double> grid,
                                double zero_tol = kDefaultZeroTol);

void write_plan_tsv(std::ostream& out, const Matrix& p, double zero_tol = kDefaultZeroTol);

}  // namespace emdalign
