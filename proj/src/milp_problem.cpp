#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "ohres/milp.hpp"

namespace ohres::milp {

std::size_t MilpProblem::add_variable(std::string name, double lower, double upper,
                                      VarKind kind, double cost) {
  if (kind == VarKind::Binary) {
    lower = std::max(lower, 0.0);
    upper = std::min(upper, 1.0);
  }
  objective.push_back(cost);
  lower_bounds.push_back(lower);
  upper_bounds.push_back(upper);
  integrality.push_back(kind);
  var_names.push_back(std::move(name));
  return objective.size() - 1;
}

std::size_t MilpProblem::add_row(std::vector<Term> terms, Relation relation,
                                 double rhs, std::string name) {
  constraints.push_back(Row{std::move(terms), relation, rhs, std::move(name)});
  return constraints.size() - 1;
}

void MilpProblem::validate() const {
  const std::size_t n = num_vars();
  if (lower_bounds.size() != n || upper_bounds.size() != n ||
      integrality.size() != n) {
    throw DimensionError("bound/integrality vectors do not match the variable count");
  }
  if (!var_names.empty() && var_names.size() != n) {
    throw DimensionError("var_names does not match the variable count");
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (std::isnan(lower_bounds[j]) || std::isnan(upper_bounds[j]) ||
        !std::isfinite(objective[j])) {
      throw DimensionError("non-numeric bound or cost on variable " + std::to_string(j));
    }
    if (lower_bounds[j] == kInfinity || upper_bounds[j] == -kInfinity) {
      throw DimensionError("infinite bound on the wrong side for variable " +
                           std::to_string(j));
    }
    if (integrality[j] == VarKind::Binary &&
        (lower_bounds[j] < 0.0 || upper_bounds[j] > 1.0)) {
      throw DimensionError("binary variable " + std::to_string(j) +
                           " has bounds outside [0, 1]");
    }
  }
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    const Row& row = constraints[i];
    if (!std::isfinite(row.rhs)) {
      throw DimensionError("row " + std::to_string(i) + " has a non-finite rhs");
    }
    for (const Term& t : row.terms) {
      if (t.var >= n) {
        throw DimensionError("row " + std::to_string(i) + " references variable " +
                             std::to_string(t.var) + " >= num_vars");
      }
      if (!std::isfinite(t.coef)) {
        throw DimensionError("row " + std::to_string(i) + " has a non-finite coefficient");
      }
    }
  }
}

const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
  }
  return "?";
}

const char* to_string(MilpStatus status) {
  switch (status) {
    case MilpStatus::Optimal: return "optimal";
    case MilpStatus::Infeasible: return "infeasible";
    case MilpStatus::NodeLimit: return "node_limit";
    case MilpStatus::Unbounded: return "unbounded";
  }
  return "?";
}

double PointReport::max_row_violation() const noexcept {
  return std::max({max_le_violation, max_eq_violation, max_ge_violation});
}

double PointReport::max_violation() const noexcept {
  return std::max({max_row_violation(), max_bound_violation, max_integrality_violation});
}

PointReport check_point(const MilpProblem& problem, std::span<const double> point) {
  if (point.size() != problem.num_vars()) {
    throw DimensionError("point has " + std::to_string(point.size()) +
                         " entries, problem has " + std::to_string(problem.num_vars()));
  }
  PointReport report;
  double worst_row = -1.0;
  for (std::size_t i = 0; i < problem.constraints.size(); ++i) {
    const Row& row = problem.constraints[i];
    double lhs = 0.0;
    for (const Term& t : row.terms) lhs += t.coef * point[t.var];
    double v = 0.0;
    switch (row.relation) {
      case Relation::LessEqual:
        v = std::max(0.0, lhs - row.rhs);
        report.max_le_violation = std::max(report.max_le_violation, v);
        break;
      case Relation::Equal:
        v = std::abs(lhs - row.rhs);
        report.max_eq_violation = std::max(report.max_eq_violation, v);
        break;
      case Relation::GreaterEqual:
        v = std::max(0.0, row.rhs - lhs);
        report.max_ge_violation = std::max(report.max_ge_violation, v);
        break;
    }
    if (v > worst_row) {
      worst_row = v;
      report.worst_row = i;
    }
  }
  double worst_var = -1.0;
  for (std::size_t j = 0; j < point.size(); ++j) {
    double x = point[j];
    double bv = std::max({0.0, problem.lower_bounds[j] - x, x - problem.upper_bounds[j]});
    report.max_bound_violation = std::max(report.max_bound_violation, bv);
    double iv = 0.0;
    if (problem.integrality[j] != VarKind::Continuous) iv = std::abs(x - std::round(x));
    report.max_integrality_violation = std::max(report.max_integrality_violation, iv);
    if (std::max(bv, iv) > worst_var) {
      worst_var = std::max(bv, iv);
      report.worst_var = j;
    }
  }
  return report;
}

double evaluate_objective(const MilpProblem& problem, std::span<const double> point) {
  if (point.size() != problem.num_vars()) {
    throw DimensionError("point size does not match the variable count");
  }
  double z = 0.0;
  for (std::size_t j = 0; j < point.size(); ++j) z += problem.objective[j] * point[j];
  return z;
}

namespace {

std::string var_label(const MilpProblem& p, std::size_t j) {
  if (j < p.var_names.size() && !p.var_names[j].empty()) return p.var_names[j];
  return "x" + std::to_string(j);
}

void append_term(std::ostringstream& out, double coef, const std::string& name, bool first) {
  char buf[64];
  if (first) {
    std::snprintf(buf, sizeof buf, "%.10g %s", coef, name.c_str());
  } else {
    std::snprintf(buf, sizeof buf, " %c %.10g %s", coef < 0 ? '-' : '+', std::abs(coef),
                  name.c_str());
  }
  out << buf;
}

}  // namespace

std::string dump(const MilpProblem& problem) {
  std::ostringstream out;
  out << "minimize:";
  bool first = true;
  for (std::size_t j = 0; j < problem.num_vars(); ++j) {
    if (problem.objective[j] == 0.0) continue;
    out << ' ';
    append_term(out, problem.objective[j], var_label(problem, j), first);
    first = false;
  }
  if (first) out << " 0";
  out << '\n';
  for (std::size_t i = 0; i < problem.constraints.size(); ++i) {
    const Row& row = problem.constraints[i];
    out << (row.name.empty() ? "r" + std::to_string(i) : row.name) << ": ";
    first = true;
    for (const Term& t : row.terms) {
      append_term(out, t.coef, var_label(problem, t.var), first);
      first = false;
    }
    if (first) out << '0';
    const char* rel = row.relation == Relation::LessEqual ? "<="
                      : row.relation == Relation::Equal   ? "="
                                                          : ">=";
    char buf[48];
    std::snprintf(buf, sizeof buf, " %s %.10g\n", rel, row.rhs);
    out << buf;
  }
  for (std::size_t j = 0; j < problem.num_vars(); ++j) {
    const char* kind = problem.integrality[j] == VarKind::Binary    ? " binary"
                       : problem.integrality[j] == VarKind::Integer ? " integer"
                                                                    : "";
    char buf[96];
    std::snprintf(buf, sizeof buf, "bound: %.10g <= %s <= %.10g%s\n", problem.lower_bounds[j],
                  var_label(problem, j).c_str(), problem.upper_bounds[j], kind);
    out << buf;
  }
  return out.str();
}

}  // namespace ohres::milp
