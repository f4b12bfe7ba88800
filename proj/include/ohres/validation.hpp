#pragma once

// Independent correctness checks. Nothing here goes through build_milp or
// branch-and-bound: dispatch is re-checked by direct arithmetic, outages are
// simulated hour by hour, and the brute-force planner enumerates sizes and
// decides dispatch feasibility with its own LP.

#include <cstddef>
#include <vector>

#include "ohres/formulation.hpp"
#include "ohres/milp.hpp"
#include "ohres/scenario.hpp"

namespace ohres {

struct ResidualReport {
  double max_power_balance_residual = 0.0;  // MW
  double max_soc_violation = 0.0;           // MWh, battery recursion and limits
  double max_cavern_violation = 0.0;        // MWh, cavern recursion and limits
  double endpoint_errors = 0.0;             // MWh, worst terminal-state mismatch
  std::size_t mode_conflicts = 0;           // intervals with u_disc + u_char > 1
  std::size_t limit_violations = 0;         // power/rating limits exceeded

  bool clean(double tol = 1e-6) const noexcept;
};

/// Re-evaluates every operating constraint of a plan/dispatch pair. Limits
/// are counted as violated when exceeded by more than `limit_tol`.
ResidualReport verify_dispatch(const PlanDecision& plan, const DispatchSchedule& dispatch,
                               const ScenarioConfig& scenario, double limit_tol = 1e-6);

struct StressStep {
  double bess_mwh = 0.0;
  double cav_mwh = 0.0;
  double fc_mw = 0.0;
  double bess_disc_mw = 0.0;
};

struct StressResult {
  int survived_hours = 0;
  bool pass = false;
  std::vector<StressStep> trajectory;  // state after each served hour
};

/// Wind lost, storage full at onset, demand p_rig_rated every hour. The fuel
/// cell runs as hard as possible while leaving the battery enough energy and
/// power for the remaining hours; survived_hours is the longest prefix for
/// which some split of load between fuel cell and battery exists.
StressResult resilience_stress_test(const PlanDecision& plan, const ScenarioConfig& scenario,
                                    int tr_hours);

struct PlanGrid {
  std::vector<int> wt_count;
  std::vector<double> bess_energy;
  std::vector<double> el_power;
  std::vector<double> fc_power;
  std::vector<double> cav_mass;

  std::size_t cardinality() const noexcept;
};

struct BruteForceResult {
  bool feasible = false;  // false: every grid point is infeasible
  PlanDecision plan;
  double objective = 0.0;
  std::size_t points_checked = 0;
};

inline constexpr std::size_t kMaxBruteForceIntervals = 6;
inline constexpr std::size_t kMaxBruteForcePoints = 100000;

/// Cheapest grid point whose fixed sizing admits a feasible dispatch. Battery
/// power ratings are cost-free and set to big_m. Throws std::invalid_argument
/// for an empty or oversized grid, or a horizon above six intervals.
BruteForceResult brute_force_plan(const ScenarioConfig& scenario, const PlanGrid& grid,
                                  const milp::SolverOptions& options = {});

/// Whether fixed sizing admits a feasible dispatch over the scenario horizon
/// (resilience rows included).
bool dispatch_feasible(const PlanDecision& plan, const ScenarioConfig& scenario,
                       const milp::SolverOptions& options = {});

}  // namespace ohres
