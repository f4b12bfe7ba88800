#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ohres/formulation.hpp"
#include "ohres/milp.hpp"
#include "ohres/scenario.hpp"

namespace ohres {

struct SubsystemCost {
  double capital = 0.0;      // M$
  double om_lifetime = 0.0;  // M$
  double total() const noexcept { return capital + om_lifetime; }
};

struct CostBreakdown {
  SubsystemCost wt, bess, el, fc, comp, cav;
  double capital_total = 0.0;
  double operation_total = 0.0;
  double grand_total = 0.0;
  double average_cost = 0.0;     // $/MWh
  double lifetime_energy = 0.0;  // MWh at rated power
};

/// Lifetime cost of a plan. Average cost divides by rated lifetime energy
/// (p_rig_rated * 8760 * lifetime_years).
CostBreakdown cost_breakdown(const PlanDecision& plan, const ScenarioConfig& scenario);

/// grand_total (M$) * 1e6 / (p_rig_rated * 8760 * lifetime_years).
/// Throws std::invalid_argument on a non-positive denominator.
double average_energy_cost(double grand_total, double p_rig_rated, double lifetime_years);

/// The platform's CO2 output under the renewable plan, t.
inline constexpr double kRenewableEmissions = 0.0;

struct BenchmarkInputs {
  double capital = 12.5;             // M$
  double fuel_cost_per_mwh = 90.0;   // $/MWh
  double emission_rate = 0.0601;     // t CO2 per MWh
};

/// Diesel-generator reference system over the same lifetime energy.
struct TraditionalBenchmark {
  BenchmarkInputs inputs;
  double lifetime_energy = 0.0;  // MWh
  double operation_total = 0.0;  // M$
  double grand_total = 0.0;      // M$
  double average_cost = 0.0;     // $/MWh
  double total_emissions = 0.0;  // t CO2
};

TraditionalBenchmark traditional_benchmark(const ScenarioConfig& scenario,
                                           const BenchmarkInputs& inputs = {});

/// One full planning solve.
struct PlanOutcome {
  milp::MilpStatus status = milp::MilpStatus::Infeasible;
  PlanDecision plan;
  DispatchSchedule dispatch;
  CostBreakdown costs;
  double objective = 0.0;
  double root_relaxation = 0.0;
  double relative_gap = 0.0;
  std::size_t nodes = 0;
  double wall_seconds = 0.0;

  bool optimal() const noexcept { return status == milp::MilpStatus::Optimal; }
};

PlanOutcome plan_system(const ScenarioConfig& scenario, const milp::SolverOptions& options = {});

struct SweepOptions {
  milp::SolverOptions solver;
  unsigned threads = 1;  // independent cells may be solved concurrently
};

struct ResilienceSweepRow {
  int tr_hours = 0;
  PlanOutcome outcome;
};

/// One solve per duration, rows in input order. Infeasible rows are kept and
/// marked through outcome.status.
std::vector<ResilienceSweepRow> sweep_resilience(const ScenarioConfig& scenario,
                                                 ResilienceMode mode,
                                                 std::span<const int> tr_list,
                                                 const SweepOptions& options = {});

class UnknownParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Names accepted by sweep_unit_costs.
const std::vector<std::string>& sweepable_cost_parameters();

/// Sets a named capital-cost rate on the scenario.
void set_cost_parameter(ScenarioConfig& scenario, const std::string& name, double value);

struct CostAxis {
  std::string parameter;
  std::vector<double> values;
};

struct CostGridCell {
  std::string param1;
  double value1 = 0.0;
  std::string param2;
  double value2 = 0.0;
  PlanOutcome outcome;
};

/// Row-major grid (axis1 outer, axis2 inner); every other parameter is held
/// at the scenario's value.
std::vector<CostGridCell> sweep_unit_costs(const ScenarioConfig& scenario, ResilienceMode mode,
                                           int tr_hours, const CostAxis& axis1,
                                           const CostAxis& axis2,
                                           const SweepOptions& options = {});

std::string resilience_sweep_csv(std::span<const ResilienceSweepRow> rows);
std::string cost_grid_csv(std::span<const CostGridCell> cells);

/// Fixed-point rendering used by every report ("-0.00" is printed as "0.00").
std::string format_fixed(double value, int decimals);

}  // namespace ohres
