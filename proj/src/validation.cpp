#include "ohres/validation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "ohres/analysis.hpp"

namespace ohres {

bool ResidualReport::clean(double tol) const noexcept {
  return max_power_balance_residual <= tol && max_soc_violation <= tol &&
         max_cavern_violation <= tol && endpoint_errors <= tol && mode_conflicts == 0 &&
         limit_violations == 0;
}

namespace {

double excess(double value, double limit) { return std::max(0.0, value - limit); }

}  // namespace

ResidualReport verify_dispatch(const PlanDecision& plan, const DispatchSchedule& d,
                               const ScenarioConfig& s, double limit_tol) {
  const std::size_t n = d.intervals();
  if (n != s.intervals() || d.p_char.size() != n || d.p_el.size() != n ||
      d.p_fc.size() != n || d.p_curt.size() != n || d.e_bess.size() != n ||
      d.e_cav.size() != n || d.u_disc.size() != n || d.u_char.size() != n) {
    throw std::invalid_argument("dispatch schedule length does not match the scenario horizon");
  }
  const auto& e = s.efficiencies;
  const double bess_cap = plan.bess_energy;
  const double cav_cap = plan.cav_mass * e.eps_h;
  const double bess_start = s.bess_initial_frac * bess_cap;
  const double cav_start = s.cav_initial_frac * cav_cap;

  ResidualReport r;
  auto limit = [&](double value, double bound) {
    if (value > bound + limit_tol) ++r.limit_violations;
  };

  double bess_prev = bess_start;
  double cav_prev = cav_start;
  for (std::size_t t = 0; t < n; ++t) {
    const double supply = d.p_disc[t] + plan.wt_count * s.wind_unit_profile[t] + d.p_fc[t];
    const double use = s.load_profile[t] + d.p_char[t] + d.p_el[t] + d.p_curt[t];
    r.max_power_balance_residual = std::max(r.max_power_balance_residual, std::abs(supply - use));

    const double bess_expected = bess_prev + d.p_char[t] * e.eta_char - d.p_disc[t] / e.eta_disc;
    r.max_soc_violation = std::max({r.max_soc_violation, std::abs(d.e_bess[t] - bess_expected),
                                    excess(0.0, d.e_bess[t]), excess(d.e_bess[t], bess_cap)});
    bess_prev = d.e_bess[t];

    const double cav_expected = cav_prev + d.p_el[t] * e.eta_el - d.p_fc[t] / e.eta_fc;
    r.max_cavern_violation = std::max({r.max_cavern_violation, std::abs(d.e_cav[t] - cav_expected),
                                       excess(0.0, d.e_cav[t]), excess(d.e_cav[t], cav_cap)});
    cav_prev = d.e_cav[t];

    if (d.u_disc[t] + d.u_char[t] > 1) ++r.mode_conflicts;

    for (double v : {d.p_disc[t], d.p_char[t], d.p_el[t], d.p_fc[t], d.p_curt[t]}) limit(0.0, v);
    limit(d.p_disc[t], plan.bess_disc_power);
    limit(d.p_char[t], plan.bess_char_power);
    limit(d.p_disc[t], d.u_disc[t] != 0 ? s.big_m : 0.0);
    limit(d.p_char[t], d.u_char[t] != 0 ? s.big_m : 0.0);
    limit(d.p_el[t], plan.el_power);
    limit(d.p_fc[t], plan.fc_power);
  }
  if (n > 0) {
    r.endpoint_errors = std::max(std::abs(d.e_bess[n - 1] - bess_start),
                                 std::abs(d.e_cav[n - 1] - cav_start));
  }
  // Daily refill capability of the electrolyzer.
  limit(cav_cap, plan.el_power * 24.0 * e.eta_el);
  return r;
}

StressResult resilience_stress_test(const PlanDecision& plan, const ScenarioConfig& s,
                                    int tr_hours) {
  const auto& e = s.efficiencies;
  const double demand = s.p_rig_rated;
  const double fc_rate = std::min(std::max(plan.fc_power, 0.0), demand);
  const double bess_rate = std::max(plan.bess_disc_power, 0.0);
  const double cav_deliverable = plan.cav_mass * e.eps_h * e.eta_fc;
  const double bess_deliverable = plan.bess_energy * e.eta_disc;
  constexpr double kTol = 1e-6;

  // Range of total fuel-cell energy that serves h hours of demand.
  auto fc_energy_range = [&](int h) {
    const double hours = static_cast<double>(h);
    const double lo = std::max(hours * std::max(0.0, demand - bess_rate),
                               hours * demand - bess_deliverable);
    const double hi = std::min(hours * fc_rate, cav_deliverable);
    return std::pair{lo, hi};
  };

  StressResult result;
  int survived = 0;
  for (int h = 1; h <= tr_hours; ++h) {
    auto [lo, hi] = fc_energy_range(h);
    if (lo > hi + kTol) break;
    survived = h;
  }
  result.survived_hours = survived;
  result.pass = survived >= tr_hours;

  if (survived > 0) {
    auto [lo, hi] = fc_energy_range(survived);
    const double fc_energy = std::max(lo, hi);
    const double fc = fc_energy / survived;
    const double disc = demand - fc;
    double bess = plan.bess_energy;
    double cav = plan.cav_mass * e.eps_h;
    for (int h = 0; h < survived; ++h) {
      cav = std::max(0.0, cav - fc / e.eta_fc);
      bess = std::max(0.0, bess - disc / e.eta_disc);
      result.trajectory.push_back({bess, cav, fc, disc});
    }
  }
  return result;
}

std::size_t PlanGrid::cardinality() const noexcept {
  return wt_count.size() * bess_energy.size() * el_power.size() * fc_power.size() *
         cav_mass.size();
}

namespace {

bool plan_level_rows_hold(const PlanDecision& plan, const ScenarioConfig& s, double tol) {
  const auto& e = s.efficiencies;
  const double cav_energy = plan.cav_mass * e.eps_h;
  if (cav_energy > plan.el_power * 24.0 * e.eta_el + tol) return false;
  const double energy = s.p_rig_rated * s.resilience.tr_hours;
  switch (s.resilience.mode) {
    case ResilienceMode::Basic:
      return true;
    case ResilienceMode::HessOnly:
      return plan.fc_power >= s.p_load_max - tol && cav_energy * e.eta_fc >= energy - tol;
    case ResilienceMode::BessOnly:
      return plan.bess_disc_power >= s.p_load_max - tol &&
             plan.bess_energy * e.eta_disc >= energy - tol;
    case ResilienceMode::Joint:
      return plan.bess_disc_power + plan.fc_power >= s.p_load_max - tol &&
             plan.bess_energy * e.eta_disc + cav_energy * e.eta_fc >= energy - tol;
  }
  return false;
}

}  // namespace

bool dispatch_feasible(const PlanDecision& plan, const ScenarioConfig& s,
                       const milp::SolverOptions& options) {
  if (!plan_level_rows_hold(plan, s, options.feas_tol)) return false;

  using milp::Relation;
  const auto& e = s.efficiencies;
  const std::size_t n = s.intervals();
  const double bess_start = s.bess_initial_frac * plan.bess_energy;
  const double cav_cap = plan.cav_mass * e.eps_h;
  const double cav_start = s.cav_initial_frac * cav_cap;

  milp::MilpProblem lp;
  struct Cols {
    std::size_t disc, chr, el, fc, curt, eb, ec;
  };
  std::vector<Cols> c(n);
  for (std::size_t t = 0; t < n; ++t) {
    c[t].disc = lp.add_variable("", 0.0, std::min(plan.bess_disc_power, s.big_m));
    c[t].chr = lp.add_variable("", 0.0, std::min(plan.bess_char_power, s.big_m));
    c[t].el = lp.add_variable("", 0.0, plan.el_power);
    c[t].fc = lp.add_variable("", 0.0, plan.fc_power);
    c[t].curt = lp.add_variable("", 0.0, milp::kInfinity);
    c[t].eb = lp.add_variable("", 0.0, plan.bess_energy);
    c[t].ec = lp.add_variable("", 0.0, cav_cap);
  }
  for (std::size_t t = 0; t < n; ++t) {
    const double wind = plan.wt_count * s.wind_unit_profile[t];
    lp.add_row({{c[t].disc, 1.0}, {c[t].fc, 1.0}, {c[t].chr, -1.0}, {c[t].el, -1.0},
                {c[t].curt, -1.0}},
               Relation::Equal, s.load_profile[t] - wind);
    // Relaxed on/off gating collapses to a shared power budget. A point that
    // charges and discharges at once nets down to one direction, with
    // curtailment taking up the difference, so nothing is lost.
    lp.add_row({{c[t].disc, 1.0}, {c[t].chr, 1.0}}, Relation::LessEqual, s.big_m);
    if (t == 0) {
      lp.add_row({{c[t].eb, 1.0}, {c[t].chr, -e.eta_char}, {c[t].disc, 1.0 / e.eta_disc}},
                 Relation::Equal, bess_start);
      lp.add_row({{c[t].ec, 1.0}, {c[t].el, -e.eta_el}, {c[t].fc, 1.0 / e.eta_fc}},
                 Relation::Equal, cav_start);
    } else {
      lp.add_row({{c[t].eb, 1.0}, {c[t - 1].eb, -1.0}, {c[t].chr, -e.eta_char},
                  {c[t].disc, 1.0 / e.eta_disc}},
                 Relation::Equal, 0.0);
      lp.add_row({{c[t].ec, 1.0}, {c[t - 1].ec, -1.0}, {c[t].el, -e.eta_el},
                  {c[t].fc, 1.0 / e.eta_fc}},
                 Relation::Equal, 0.0);
    }
  }
  lp.add_row({{c[n - 1].eb, 1.0}}, Relation::Equal, bess_start);
  lp.add_row({{c[n - 1].ec, 1.0}}, Relation::Equal, cav_start);
  return milp::solve_lp(lp, options).status == milp::LpStatus::Optimal;
}

BruteForceResult brute_force_plan(const ScenarioConfig& s, const PlanGrid& grid,
                                  const milp::SolverOptions& options) {
  if (grid.cardinality() == 0) throw std::invalid_argument("brute-force grid is empty");
  if (grid.cardinality() > kMaxBruteForcePoints) {
    throw std::invalid_argument("brute-force grid exceeds 100000 points");
  }
  if (s.intervals() == 0 || s.intervals() > kMaxBruteForceIntervals) {
    throw std::invalid_argument("brute-force planning needs a horizon of 1..6 intervals");
  }

  struct Candidate {
    PlanDecision plan;
    double cost;
    std::size_t order;
  };
  std::vector<Candidate> candidates;
  candidates.reserve(grid.cardinality());
  for (int wt : grid.wt_count)
    for (double bess : grid.bess_energy)
      for (double el : grid.el_power)
        for (double fc : grid.fc_power)
          for (double kg : grid.cav_mass) {
            PlanDecision p;
            p.wt_count = wt;
            p.bess_energy = bess;
            p.bess_char_power = s.big_m;
            p.bess_disc_power = s.big_m;
            p.el_power = el;
            p.fc_power = fc;
            p.cav_mass = kg;
            candidates.push_back({p, cost_breakdown(p, s).grand_total, candidates.size()});
          }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Candidate& a, const Candidate& b) { return a.cost < b.cost; });

  BruteForceResult result;
  for (const Candidate& cand : candidates) {
    ++result.points_checked;
    if (dispatch_feasible(cand.plan, s, options)) {
      result.feasible = true;
      result.plan = cand.plan;
      result.objective = cand.cost;
      break;
    }
  }
  return result;
}

}  // namespace ohres
