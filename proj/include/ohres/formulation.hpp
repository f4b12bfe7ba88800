#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "ohres/milp.hpp"
#include "ohres/scenario.hpp"

namespace ohres {

/// Column handles of every decision variable in the planning MILP.
struct VariableIndex {
  // sizing
  std::size_t v_wt = 0;
  std::size_t v_bess = 0;
  std::size_t p_char_max = 0;
  std::size_t p_disc_max = 0;
  std::size_t v_el = 0;
  std::size_t v_fc = 0;
  std::size_t v_cav = 0;
  // per interval
  std::vector<std::size_t> p_disc, p_char, p_el, p_fc, p_curt, e_bess, e_cav, u_disc,
      u_char;

  std::size_t intervals() const noexcept { return p_disc.size(); }
  std::size_t num_vars() const noexcept { return 7 + 9 * intervals(); }
};

struct PlanDecision {
  int wt_count = 0;
  double bess_energy = 0.0;      // MWh
  double bess_char_power = 0.0;  // MW
  double bess_disc_power = 0.0;  // MW
  double el_power = 0.0;         // MW
  double fc_power = 0.0;         // MW
  double cav_mass = 0.0;         // kg
};

struct DispatchSchedule {
  std::vector<double> p_disc, p_char, p_el, p_fc, p_curt;  // MW
  std::vector<double> e_bess, e_cav;                        // MWh, end of interval
  std::vector<int> u_disc, u_char;

  std::size_t intervals() const noexcept { return p_disc.size(); }
  void resize(std::size_t n);
};

struct PlanningModel {
  milp::MilpProblem problem;
  VariableIndex index;
};

/// Builds the lifetime-cost MILP for a validated scenario. The horizon is the
/// profile length; resilience rows follow scenario.resilience.
PlanningModel build_milp(const ScenarioConfig& scenario);

/// Thrown when extract_solution is handed a non-optimal solution.
class NotOptimalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct ExtractedSolution {
  PlanDecision plan;
  DispatchSchedule dispatch;
};

ExtractedSolution extract_solution(const milp::MilpSolution& solution,
                                   const VariableIndex& index);

/// Closed-form lower bounds implied by a mode's resilience rows.
struct ResilienceBounds {
  double fc_power_min = 0.0;      // MW, HessOnly
  double cav_energy_min = 0.0;    // MWh of stored hydrogen energy, HessOnly
  double cav_mass_min = 0.0;      // kg, HessOnly
  double bess_power_min = 0.0;    // MW of discharge rating, BessOnly
  double bess_energy_min = 0.0;   // MWh, BessOnly
  double joint_power_min = 0.0;   // MW of p_disc_max + v_fc, Joint
  double joint_energy_min = 0.0;  // MWh deliverable, Joint
};

ResilienceBounds resilience_lower_bounds(ResilienceMode mode, int tr_hours,
                                         const ScenarioConfig& scenario);

}  // namespace ohres
