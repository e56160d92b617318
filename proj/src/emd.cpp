#include "emd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

#include "error.hpp"
#include "io_util.hpp"

namespace emdalign {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Residual capacities below this are treated as saturated.
constexpr double kArcTol = 1e-15;
// Flow shortfall accepted as "all mass shipped".
constexpr double kMassTol = 1e-12;
constexpr double kAuditTol = 1e-8;
constexpr double kEntryTol = 1e-12;

// Successive shortest paths on the bipartite network
//   S -> row i (cap a_i) -> col j (cost D_ij, uncapacitated) -> T (cap b_j)
// shipping one unit of flow. Dijkstra runs on reduced costs with node
// potentials, dense O(V^2 + nm) per augmentation.
class TransportSolver {
 public:
  TransportSolver(const Matrix& cost, std::vector<double> row_cap, std::vector<double> col_cap)
      : cost_(cost),
        n_(cost.rows()),
        m_(cost.cols()),
        row_cap_(std::move(row_cap)),
        col_cap_(std::move(col_cap)),
        flow_(n_, m_),
        row_flow_(n_, 0.0),
        col_flow_(m_, 0.0),
        pot_(n_ + m_ + 2, 0.0),
        dist_(n_ + m_ + 2),
        parent_(n_ + m_ + 2),
        done_(n_ + m_ + 2) {}

  TransportPlan run(double epsilon) {
    const std::size_t max_aug = 20 * (n_ + m_) * (n_ + m_ + 1) + 1000;
    double shipped = 0.0;
    std::size_t aug = 0;
    while (1.0 - shipped > kMassTol) {
      if (aug >= max_aug) {
        std::ostringstream msg;
        msg << "transport solver did not converge: " << aug << " augmentations, shipped "
            << shipped << " of 1 (n=" << n_ << ", m=" << m_ << ", eps=" << epsilon << ")";
        throw SolverError(msg.str());
      }
      if (!shortest_path()) break;
      shipped += augment(1.0 - shipped);
      ++aug;
    }
    if (1.0 - shipped > 1e-9) {
      std::ostringstream msg;
      msg << "transport problem infeasible: shipped " << shipped << " after " << aug
          << " augmentations (n=" << n_ << ", m=" << m_ << ", eps=" << epsilon << ")";
      throw SolverError(msg.str());
    }
    TransportPlan plan;
    plan.p = std::move(flow_);
    plan.epsilon = epsilon;
    plan.augmentations = aug;
    double obj = 0.0;
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < m_; ++j) obj += cost_(i, j) * plan.p(i, j);
    plan.objective = obj;
    return plan;
  }

 private:
  std::size_t row_node(std::size_t i) const { return i; }
  std::size_t col_node(std::size_t j) const { return n_ + j; }
  std::size_t source() const { return n_ + m_; }
  std::size_t sink() const { return n_ + m_ + 1; }

  void relax(std::size_t from, std::size_t to, double arc_cost) {
    const double reduced = std::max(0.0, arc_cost + pot_[from] - pot_[to]);
    const double cand = dist_[from] + reduced;
    if (cand < dist_[to]) {
      dist_[to] = cand;
      parent_[to] = from;
    }
  }

  bool shortest_path() {
    const std::size_t nodes = n_ + m_ + 2;
    std::fill(dist_.begin(), dist_.end(), kInf);
    std::fill(done_.begin(), done_.end(), false);
    const std::size_t none = nodes;
    std::fill(parent_.begin(), parent_.end(), none);
    dist_[source()] = 0.0;

    while (true) {
      std::size_t u = none;
      double best = kInf;
      for (std::size_t v = 0; v < nodes; ++v) {
        if (!done_[v] && dist_[v] < best) {
          best = dist_[v];
          u = v;
        }
      }
      if (u == none) break;
      done_[u] = true;
      if (u == sink()) break;
      if (u == source()) {
        for (std::size_t i = 0; i < n_; ++i)
          if (row_cap_[i] - row_flow_[i] > kArcTol) relax(u, row_node(i), 0.0);
      } else if (u < n_) {
        for (std::size_t j = 0; j < m_; ++j) relax(u, col_node(j), cost_(u, j));
      } else {
        const std::size_t j = u - n_;
        for (std::size_t i = 0; i < n_; ++i)
          if (flow_(i, j) > kArcTol) relax(u, row_node(i), -cost_(i, j));
        if (col_cap_[j] - col_flow_[j] > kArcTol) relax(u, sink(), 0.0);
      }
    }
    if (!done_[sink()]) return false;
    const double dt = dist_[sink()];
    for (std::size_t v = 0; v < nodes; ++v) pot_[v] += std::min(dist_[v], dt);
    return true;
  }

  // Pushes the bottleneck along the parent chain; returns the amount pushed.
  double augment(double remaining) {
    double delta = remaining;
    std::size_t v = sink();
    while (v != source()) {
      const std::size_t u = parent_[v];
      if (v == sink()) {
        const std::size_t j = u - n_;
        delta = std::min(delta, col_cap_[j] - col_flow_[j]);
      } else if (u == source()) {
        delta = std::min(delta, row_cap_[v] - row_flow_[v]);
      } else if (u >= n_) {  // backward arc col -> row
        delta = std::min(delta, flow_(v, u - n_));
      }
      v = u;
    }
    v = sink();
    while (v != source()) {
      const std::size_t u = parent_[v];
      if (v == sink()) {
        col_flow_[u - n_] += delta;
      } else if (u == source()) {
        row_flow_[v] += delta;
      } else if (u < n_) {
        flow_(u, v - n_) += delta;
      } else {
        double& f = flow_(v, u - n_);
        f -= delta;
        if (f < kArcTol) f = 0.0;
      }
      v = u;
    }
    return delta;
  }

  const Matrix& cost_;
  std::size_t n_, m_;
  std::vector<double> row_cap_, col_cap_;
  Matrix flow_;
  std::vector<double> row_flow_, col_flow_;
  std::vector<double> pot_, dist_;
  std::vector<std::size_t> parent_;
  std::vector<bool> done_;
};

TransportPlan solve(const DistanceMatrix& dm, double epsilon, bool strict) {
  validate_distance_matrix(dm);
  const double n = static_cast<double>(dm.rows());
  const double m = static_cast<double>(dm.cols());
  std::vector<double> row_cap(dm.len_src), col_cap(dm.len_tgt);
  for (auto& a : row_cap) a += epsilon / n;
  for (auto& b : col_cap) b += epsilon / m;
  TransportSolver solver(dm.d, std::move(row_cap), std::move(col_cap));
  TransportPlan plan = solver.run(epsilon);
  const PlanAudit audit = audit_plan(dm, plan.p, epsilon, strict);
  plan.feasible = audit.ok;
  if (!audit.ok) {
    std::ostringstream msg;
    msg << "transport plan failed feasibility audit (mass error " << audit.mass_error
        << ", row violation " << audit.row_violation << ", col violation "
        << audit.col_violation << ", min entry " << audit.min_entry << ")";
    throw SolverError(msg.str());
  }
  return plan;
}

}  // namespace

PlanAudit audit_plan(const DistanceMatrix& dm, const Matrix& p, double epsilon, bool strict) {
  PlanAudit a;
  const std::size_t n = p.rows(), m = p.cols();
  if (n != dm.rows() || m != dm.cols()) return a;
  double total = 0.0;
  a.min_entry = kInf;
  a.row_violation = -kInf;
  a.col_violation = -kInf;
  std::vector<double> col(m, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      row += p(i, j);
      col[j] += p(i, j);
      a.min_entry = std::min(a.min_entry, p(i, j));
    }
    total += row;
    a.row_violation =
        std::max(a.row_violation, row - (dm.len_src[i] + epsilon / static_cast<double>(n)));
  }
  for (std::size_t j = 0; j < m; ++j) {
    const double cap = dm.len_tgt[j] + epsilon / static_cast<double>(m);
    const double v = strict ? std::abs(col[j] - cap) : col[j] - cap;
    a.col_violation = std::max(a.col_violation, v);
  }
  a.mass_error = std::abs(total - 1.0);
  a.ok = a.mass_error <= kAuditTol && a.row_violation <= kAuditTol &&
         a.col_violation <= kAuditTol && a.min_entry >= -kEntryTol;
  return a;
}

TransportPlan solve_strict(const DistanceMatrix& dm) { return solve(dm, 0.0, true); }

TransportPlan solve_relaxed(const DistanceMatrix& dm, double epsilon) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0))
    throw ConfigError("epsilon must be in [0, 1]");
  return solve(dm, epsilon, false);
}

double submatrix_penalty(const Matrix& p, double zero_tol) {
  double z = 0.0;
  for (std::size_t i = 0; i + 1 < p.rows(); ++i) {
    for (std::size_t j = 0; j + 1 < p.cols(); ++j) {
      const double a = p(i, j), b = p(i, j + 1), c = p(i + 1, j), d = p(i + 1, j + 1);
      if (a > zero_tol && b > zero_tol && c > zero_tol && d > zero_tol)
        z += std::min(std::min(a, b), std::min(c, d));
    }
  }
  return z;
}

std::vector<double> default_epsilon_grid() {
  std::vector<double> grid;
  for (int k = 0; k <= 20; ++k) grid.push_back(k / 100.0);
  grid.push_back(0.3);
  grid.push_back(0.5);
  grid.push_back(1.0);
  return grid;
}

EpsilonSelection select_epsilon(const DistanceMatrix& dm, double gamma,
                                std::span<const double> grid, double zero_tol) {
  if (grid.empty()) throw ConfigError("epsilon grid is empty");
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw ConfigError("gamma must be >= 0");
  for (double e : grid) {
    if (!(e >= 0.0 && e <= 1.0)) throw ConfigError("epsilon grid values must be in [0, 1]");
  }
  EpsilonSelection best;
  bool have = false;
  for (double eps : grid) {
    TransportPlan plan = solve_relaxed(dm, eps);
    const double penalty = submatrix_penalty(plan.p, zero_tol);
    const double score = penalty + gamma * eps;
    best.candidates.push_back({eps, penalty, score, plan.objective});
    if (!have || score < best.score || (score == best.score && eps < best.epsilon)) {
      best.plan = std::move(plan);
      best.epsilon = eps;
      best.score = score;
      have = true;
    }
  }
  return best;
}

void write_plan_tsv(std::ostream& out, const Matrix& p, double zero_tol) {
  for (std::size_t i = 0; i < p.rows(); ++i) {
    for (std::size_t j = 0; j < p.cols(); ++j) {
      if (j) out << '\t';
      const double v = p(i, j);
      out << (v > zero_tol ? shortest_repr(v) : std::string("0"));
    }
    out << '\n';
  }
}

}  // namespace emdalign
