#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

#include "ohres/milp.hpp"

namespace ohres::milp {
namespace {

struct Node {
  std::vector<double> lower;
  std::vector<double> upper;
  double bound;  // parent relaxation value
  std::size_t depth;
  std::size_t id;
};

// Best bound first; ties go to the deeper node, then to the older one.
struct WorseNode {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    if (a.depth != b.depth) return a.depth < b.depth;
    return a.id > b.id;
  }
};

bool is_integral_kind(VarKind k) { return k != VarKind::Continuous; }

}  // namespace

MilpSolution solve_milp(const MilpProblem& problem, const SolverOptions& options) {
  problem.validate();
  MilpSolution result;

  MilpProblem work = problem;
  for (std::size_t j = 0; j < work.num_vars(); ++j) {
    if (!is_integral_kind(work.integrality[j])) continue;
    work.lower_bounds[j] = std::ceil(work.lower_bounds[j] - options.int_tol);
    work.upper_bounds[j] = std::floor(work.upper_bounds[j] + options.int_tol);
  }

  std::priority_queue<Node, std::vector<Node>, WorseNode> open;
  std::size_t next_id = 0;
  open.push(Node{work.lower_bounds, work.upper_bounds, -kInfinity, 0, next_id++});

  double incumbent = kInfinity;
  double pruned_bound = kInfinity;  // smallest bound discarded by the gap test
  bool hit_limit = false;

  auto gap_slack = [&] { return options.gap_tol * std::max(1.0, std::abs(incumbent)); };
  auto global_bound = [&] {
    double lb = std::min(incumbent, pruned_bound);
    if (!open.empty()) lb = std::min(lb, open.top().bound);
    return lb;
  };

  while (!open.empty()) {
    if (incumbent < kInfinity && open.top().bound >= incumbent - gap_slack()) {
      // Everything left is within tolerance of the incumbent.
      pruned_bound = std::min(pruned_bound, open.top().bound);
      while (!open.empty()) open.pop();
      break;
    }
    if (result.nodes_explored >= options.node_limit) {
      hit_limit = true;
      break;
    }
    Node node = open.top();
    open.pop();

    work.lower_bounds = node.lower;
    work.upper_bounds = node.upper;
    const LpSolution lp = solve_lp(work, options);
    ++result.nodes_explored;

    if (node.id == 0) {
      if (lp.status == LpStatus::Unbounded) {
        result.status = MilpStatus::Unbounded;
        return result;
      }
      if (lp.status == LpStatus::Optimal) result.root_relaxation = lp.objective_value;
    }

    if (lp.status == LpStatus::Optimal) {
      if (incumbent < kInfinity && lp.objective_value >= incumbent - gap_slack()) {
        pruned_bound = std::min(pruned_bound, lp.objective_value);
      } else {
        // Most fractional integer variable; lowest index wins ties.
        std::size_t branch_var = problem.num_vars();
        double best_frac = options.int_tol;
        for (std::size_t j = 0; j < work.num_vars(); ++j) {
          if (!is_integral_kind(work.integrality[j])) continue;
          const double v = lp.values[j];
          const double frac = std::abs(v - std::round(v));
          if (frac > best_frac) {
            best_frac = frac;
            branch_var = j;
          }
        }
        if (branch_var == problem.num_vars()) {
          incumbent = lp.objective_value;
          result.values = lp.values;
          result.objective_value = lp.objective_value;
        } else {
          const double v = lp.values[branch_var];
          Node down{node.lower, node.upper, lp.objective_value, node.depth + 1, next_id++};
          down.upper[branch_var] = std::floor(v);
          Node up{std::move(node.lower), std::move(node.upper), lp.objective_value,
                  node.depth + 1, next_id++};
          up.lower[branch_var] = std::ceil(v);
          open.push(std::move(down));
          open.push(std::move(up));
        }
      }
    }
    // Unbounded below the root cannot happen once the root is bounded;
    // infeasible nodes are simply dropped.

    result.trace.push_back(BranchProgress{result.nodes_explored, incumbent, global_bound()});
  }

  result.best_bound = global_bound();
  if (result.has_incumbent()) {
    result.relative_gap =
        std::max(0.0, incumbent - result.best_bound) / std::max(1.0, std::abs(incumbent));
  }
  if (hit_limit) {
    result.status = MilpStatus::NodeLimit;
  } else if (result.has_incumbent()) {
    result.status = MilpStatus::Optimal;
  } else {
    result.status = MilpStatus::Infeasible;
    result.best_bound = kInfinity;
  }
  return result;
}

}  // namespace ohres::milp
