#pragma once

// Self-contained MILP engine: bounded-variable primal simplex for the LP
// relaxations and best-bound branch-and-bound over integer variables.

#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ohres::milp {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class Relation { LessEqual, Equal, GreaterEqual };
enum class VarKind { Continuous, Integer, Binary };

struct Term {
  std::size_t var;
  double coef;
};

struct Row {
  std::vector<Term> terms;
  Relation relation = Relation::LessEqual;
  double rhs = 0.0;
  std::string name;
};

/// Raised for malformed problems (bad indices, inconsistent sizes or bounds).
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when the simplex loses numerical control. Never returned as a
/// silent wrong answer.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Minimization problem  min c'x  s.t. rows, lower <= x <= upper.
struct MilpProblem {
  std::vector<double> objective;
  std::vector<Row> constraints;
  std::vector<double> lower_bounds;
  std::vector<double> upper_bounds;
  std::vector<VarKind> integrality;
  std::vector<std::string> var_names;

  std::size_t num_vars() const noexcept { return objective.size(); }

  /// Appends a variable and returns its index. Binary forces [0, 1].
  std::size_t add_variable(std::string name, double lower, double upper,
                           VarKind kind = VarKind::Continuous, double cost = 0.0);
  std::size_t add_row(std::vector<Term> terms, Relation relation, double rhs,
                      std::string name = {});

  /// Throws DimensionError when an invariant is broken.
  void validate() const;
};

struct SolverOptions {
  double feas_tol = 1e-7;
  double int_tol = 1e-6;
  double gap_tol = 1e-6;  // relative
  std::size_t node_limit = 100000;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };
enum class MilpStatus { Optimal, Infeasible, NodeLimit, Unbounded };

const char* to_string(LpStatus status);
const char* to_string(MilpStatus status);

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  std::vector<double> values;
  double objective_value = 0.0;
  double max_primal_residual = 0.0;
  std::size_t iterations = 0;
};

/// One sample per processed node.
struct BranchProgress {
  std::size_t node = 0;
  double incumbent = kInfinity;
  double best_bound = -kInfinity;
};

struct MilpSolution {
  MilpStatus status = MilpStatus::Infeasible;
  std::vector<double> values;  // empty when no incumbent exists
  double objective_value = kInfinity;
  double best_bound = -kInfinity;
  double relative_gap = kInfinity;
  std::size_t nodes_explored = 0;
  double root_relaxation = -kInfinity;
  std::vector<BranchProgress> trace;

  bool has_incumbent() const noexcept { return !values.empty(); }
};

/// Solves the continuous relaxation (integrality flags are ignored).
LpSolution solve_lp(const MilpProblem& problem, const SolverOptions& options = {});

MilpSolution solve_milp(const MilpProblem& problem, const SolverOptions& options = {});

/// Raw (untoleranced) violations of a candidate point.
struct PointReport {
  double max_le_violation = 0.0;   // rows a'x <= b
  double max_eq_violation = 0.0;   // rows a'x == b
  double max_ge_violation = 0.0;   // rows a'x >= b
  double max_bound_violation = 0.0;
  double max_integrality_violation = 0.0;
  std::size_t worst_row = 0;
  std::size_t worst_var = 0;

  double max_row_violation() const noexcept;
  double max_violation() const noexcept;
};

PointReport check_point(const MilpProblem& problem, std::span<const double> point);

double evaluate_objective(const MilpProblem& problem, std::span<const double> point);

/// Human-readable listing: objective, one constraint per line, then bounds.
std::string dump(const MilpProblem& problem);

}  // namespace ohres::milp
