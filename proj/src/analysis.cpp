#include "ohres/analysis.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <thread>

namespace ohres {

CostBreakdown cost_breakdown(const PlanDecision& plan, const ScenarioConfig& s) {
  const auto& c = s.costs;
  const double life = static_cast<double>(s.lifetime_years);
  const double cav_energy = plan.cav_mass * s.efficiencies.eps_h;

  CostBreakdown b;
  const double wt = static_cast<double>(plan.wt_count);
  b.wt = {wt * c.wt_capital, wt * c.wt_om * life};
  b.bess = {plan.bess_energy * c.bess_capital, plan.bess_energy * c.bess_om * life};
  b.el = {plan.el_power * c.el_capital, plan.el_power * c.el_om * life};
  b.fc = {plan.fc_power * c.fc_capital, plan.fc_power * c.fc_om * life};
  b.comp = {plan.el_power * c.comp_capital, 0.0};
  b.cav = {cav_energy * c.cav_capital_per_mwh, cav_energy * c.cav_om * life};

  for (const SubsystemCost* sub : {&b.wt, &b.bess, &b.el, &b.fc, &b.comp, &b.cav}) {
    b.capital_total += sub->capital;
    b.operation_total += sub->om_lifetime;
  }
  b.grand_total = b.capital_total + b.operation_total;
  b.lifetime_energy = s.lifetime_energy();
  b.average_cost = average_energy_cost(b.grand_total, s.p_rig_rated, life);
  return b;
}

double average_energy_cost(double grand_total, double p_rig_rated, double lifetime_years) {
  if (!(p_rig_rated > 0.0) || !(lifetime_years > 0.0)) {
    throw std::invalid_argument("average cost needs positive rated power and lifetime");
  }
  return grand_total * 1e6 / (p_rig_rated * 8760.0 * lifetime_years);
}

TraditionalBenchmark traditional_benchmark(const ScenarioConfig& s, const BenchmarkInputs& in) {
  if (in.capital < 0.0 || in.fuel_cost_per_mwh < 0.0 || in.emission_rate < 0.0) {
    throw std::invalid_argument("benchmark inputs must be >= 0");
  }
  TraditionalBenchmark t;
  t.inputs = in;
  t.lifetime_energy = s.lifetime_energy();
  t.operation_total = in.fuel_cost_per_mwh * t.lifetime_energy / 1e6;
  t.grand_total = in.capital + t.operation_total;
  t.average_cost = average_energy_cost(t.grand_total, s.p_rig_rated, s.lifetime_years);
  t.total_emissions = in.emission_rate * t.lifetime_energy;
  return t;
}

PlanOutcome plan_system(const ScenarioConfig& scenario, const milp::SolverOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const PlanningModel model = build_milp(scenario);
  const milp::MilpSolution sol = milp::solve_milp(model.problem, options);

  PlanOutcome out;
  out.status = sol.status;
  out.nodes = sol.nodes_explored;
  out.root_relaxation = sol.root_relaxation;
  out.relative_gap = sol.relative_gap;
  if (sol.status == milp::MilpStatus::Optimal) {
    ExtractedSolution ex = extract_solution(sol, model.index);
    out.plan = ex.plan;
    out.dispatch = std::move(ex.dispatch);
    out.costs = cost_breakdown(out.plan, scenario);
    out.objective = sol.objective_value;
  }
  out.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

namespace {

// Runs job(i) for i in [0, count) on up to `threads` workers. Each job writes
// only its own slot, so results keep input order.
void run_indexed(std::size_t count, unsigned threads,
                 const std::function<void(std::size_t)>& job) {
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, count));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(count);
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            job(i);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace

std::vector<ResilienceSweepRow> sweep_resilience(const ScenarioConfig& scenario,
                                                 ResilienceMode mode,
                                                 std::span<const int> tr_list,
                                                 const SweepOptions& options) {
  for (int tr : tr_list) {
    if (tr < 0) throw std::invalid_argument("resilience durations must be >= 0");
  }
  std::vector<ResilienceSweepRow> rows(tr_list.size());
  run_indexed(rows.size(), options.threads, [&](std::size_t i) {
    ScenarioConfig s = scenario;
    s.resilience = {mode, tr_list[i]};
    rows[i].tr_hours = tr_list[i];
    rows[i].outcome = plan_system(s, options.solver);
  });
  return rows;
}

const std::vector<std::string>& sweepable_cost_parameters() {
  static const std::vector<std::string> names{"wt_capital", "bess_capital", "el_capital",
                                              "fc_capital"};
  return names;
}

void set_cost_parameter(ScenarioConfig& s, const std::string& name, double value) {
  if (name == "wt_capital") {
    s.costs.wt_capital = value;
  } else if (name == "bess_capital") {
    s.costs.bess_capital = value;
  } else if (name == "el_capital") {
    s.costs.el_capital = value;
  } else if (name == "fc_capital") {
    s.costs.fc_capital = value;
  } else {
    throw UnknownParameterError("unknown cost parameter '" + name +
                                "' (expected wt_capital, bess_capital, el_capital or "
                                "fc_capital)");
  }
}

std::vector<CostGridCell> sweep_unit_costs(const ScenarioConfig& scenario, ResilienceMode mode,
                                           int tr_hours, const CostAxis& axis1,
                                           const CostAxis& axis2,
                                           const SweepOptions& options) {
  for (const CostAxis* axis : {&axis1, &axis2}) {
    ScenarioConfig probe = scenario;
    set_cost_parameter(probe, axis->parameter, 0.0);
    for (double v : axis->values) {
      if (!(v >= 0.0) || !std::isfinite(v)) {
        throw std::invalid_argument("cost values must be finite and >= 0");
      }
    }
  }
  std::vector<CostGridCell> cells;
  cells.reserve(axis1.values.size() * axis2.values.size());
  for (double v1 : axis1.values) {
    for (double v2 : axis2.values) {
      cells.push_back(CostGridCell{axis1.parameter, v1, axis2.parameter, v2, {}});
    }
  }
  run_indexed(cells.size(), options.threads, [&](std::size_t i) {
    ScenarioConfig s = scenario;
    s.resilience = {mode, tr_hours};
    set_cost_parameter(s, cells[i].param1, cells[i].value1);
    set_cost_parameter(s, cells[i].param2, cells[i].value2);
    cells[i].outcome = plan_system(s, options.solver);
  });
  return cells;
}

std::string format_fixed(double value, int decimals) {
  const double half_ulp = 0.5 * std::pow(10.0, -decimals);
  if (std::abs(value) < half_ulp) value = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  return buf;
}

std::string resilience_sweep_csv(std::span<const ResilienceSweepRow> rows) {
  std::ostringstream out;
  out << "tr_hours,wt_count,bess_mwh,el_mw,fc_mw,cav_kg,capital_musd,operation_musd,"
         "total_musd,avg_usd_per_mwh,status\n";
  for (const auto& row : rows) {
    const auto& o = row.outcome;
    out << row.tr_hours << ',';
    if (o.optimal()) {
      out << o.plan.wt_count << ',' << format_fixed(o.plan.bess_energy, 2) << ','
          << format_fixed(o.plan.el_power, 2) << ',' << format_fixed(o.plan.fc_power, 2) << ','
          << format_fixed(o.plan.cav_mass, 1) << ','
          << format_fixed(o.costs.capital_total, 2) << ','
          << format_fixed(o.costs.operation_total, 2) << ','
          << format_fixed(o.costs.grand_total, 2) << ','
          << format_fixed(o.costs.average_cost, 2) << ',';
    } else {
      out << ",,,,,,,,,";
    }
    out << milp::to_string(o.status) << '\n';
  }
  return out.str();
}

std::string cost_grid_csv(std::span<const CostGridCell> cells) {
  std::ostringstream out;
  out << "param1,value1,param2,value2,avg_usd_per_mwh,status\n";
  for (const auto& c : cells) {
    out << c.param1 << ',' << format_fixed(c.value1, 2) << ',' << c.param2 << ','
        << format_fixed(c.value2, 2) << ',';
    if (c.outcome.optimal()) out << format_fixed(c.outcome.costs.average_cost, 2);
    out << ',' << milp::to_string(c.outcome.status) << '\n';
  }
  return out.str();
}

}  // namespace ohres
