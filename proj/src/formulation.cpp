#include "ohres/formulation.hpp"

#include <cmath>
#include <string>

namespace ohres {

using milp::Relation;
using milp::Term;
using milp::VarKind;

namespace {

constexpr double kRefillHours = 24.0;

std::string indexed(const char* name, std::size_t t) {
  return std::string(name) + "[" + std::to_string(t + 1) + "]";
}

std::vector<std::size_t> add_series(milp::MilpProblem& p, const char* name, std::size_t n,
                                    double upper, VarKind kind) {
  std::vector<std::size_t> ids(n);
  for (std::size_t t = 0; t < n; ++t) ids[t] = p.add_variable(indexed(name, t), 0.0, upper, kind);
  return ids;
}

}  // namespace

void DispatchSchedule::resize(std::size_t n) {
  for (auto* v : {&p_disc, &p_char, &p_el, &p_fc, &p_curt, &e_bess, &e_cav}) v->assign(n, 0.0);
  u_disc.assign(n, 0);
  u_char.assign(n, 0);
}

PlanningModel build_milp(const ScenarioConfig& s) {
  const std::size_t n = s.intervals();
  const auto& c = s.costs;
  const auto& e = s.efficiencies;
  const double life = static_cast<double>(s.lifetime_years);
  const double inf = milp::kInfinity;

  PlanningModel model;
  auto& p = model.problem;
  auto& ix = model.index;

  // Objective: each subsystem sized V costs V * (capital + O&M * lifetime).
  // The compressor follows the electrolyzer rating; the cavern is charged on
  // its hydrogen energy capacity v_cav * eps_h.
  ix.v_wt = p.add_variable("v_wt", 0.0, s.wt_count_max, VarKind::Integer,
                           c.wt_capital + c.wt_om * life);
  ix.v_bess = p.add_variable("v_bess", 0.0, inf, VarKind::Continuous,
                             c.bess_capital + c.bess_om * life);
  ix.p_char_max = p.add_variable("p_char_max", 0.0, s.big_m);
  ix.p_disc_max = p.add_variable("p_disc_max", 0.0, s.big_m);
  ix.v_el = p.add_variable("v_el", 0.0, inf, VarKind::Continuous,
                           c.el_capital + c.comp_capital + c.el_om * life);
  ix.v_fc = p.add_variable("v_fc", 0.0, inf, VarKind::Continuous, c.fc_capital + c.fc_om * life);
  ix.v_cav = p.add_variable("v_cav", 0.0, inf, VarKind::Continuous,
                            e.eps_h * (c.cav_capital_per_mwh + c.cav_om * life));

  ix.p_disc = add_series(p, "p_disc", n, inf, VarKind::Continuous);
  ix.p_char = add_series(p, "p_char", n, inf, VarKind::Continuous);
  ix.p_el = add_series(p, "p_el", n, inf, VarKind::Continuous);
  ix.p_fc = add_series(p, "p_fc", n, inf, VarKind::Continuous);
  ix.p_curt = add_series(p, "p_curt", n, inf, VarKind::Continuous);
  ix.e_bess = add_series(p, "e_bess", n, inf, VarKind::Continuous);
  ix.e_cav = add_series(p, "e_cav", n, inf, VarKind::Continuous);
  ix.u_disc = add_series(p, "u_disc", n, 1.0, VarKind::Binary);
  ix.u_char = add_series(p, "u_char", n, 1.0, VarKind::Binary);

  for (std::size_t t = 0; t < n; ++t) {
    // Power balance.
    p.add_row({{ix.p_disc[t], 1.0},
               {ix.v_wt, s.wind_unit_profile[t]},
               {ix.p_fc[t], 1.0},
               {ix.p_char[t], -1.0},
               {ix.p_el[t], -1.0},
               {ix.p_curt[t], -1.0}},
              Relation::Equal, s.load_profile[t], indexed("balance", t));

    // Battery energy; the first interval starts from the initial fraction.
    std::vector<Term> soc{{ix.e_bess[t], 1.0},
                          {ix.p_char[t], -e.eta_char},
                          {ix.p_disc[t], 1.0 / e.eta_disc}};
    if (t == 0) {
      soc.push_back({ix.v_bess, -s.bess_initial_frac});
    } else {
      soc.push_back({ix.e_bess[t - 1], -1.0});
    }
    p.add_row(std::move(soc), Relation::Equal, 0.0, indexed("bess_soc", t));
    p.add_row({{ix.e_bess[t], 1.0}, {ix.v_bess, -1.0}}, Relation::LessEqual, 0.0,
              indexed("bess_cap", t));

    // One of charge, discharge or idle; ratings gated through big-M.
    p.add_row({{ix.u_disc[t], 1.0}, {ix.u_char[t], 1.0}}, Relation::LessEqual, 1.0,
              indexed("bess_mode", t));
    p.add_row({{ix.p_disc[t], 1.0}, {ix.p_disc_max, -1.0}}, Relation::LessEqual, 0.0,
              indexed("disc_rating", t));
    p.add_row({{ix.p_disc[t], 1.0}, {ix.u_disc[t], -s.big_m}}, Relation::LessEqual, 0.0,
              indexed("disc_gate", t));
    p.add_row({{ix.p_char[t], 1.0}, {ix.p_char_max, -1.0}}, Relation::LessEqual, 0.0,
              indexed("char_rating", t));
    p.add_row({{ix.p_char[t], 1.0}, {ix.u_char[t], -s.big_m}}, Relation::LessEqual, 0.0,
              indexed("char_gate", t));

    // Hydrogen chain.
    std::vector<Term> cav{{ix.e_cav[t], 1.0},
                          {ix.p_el[t], -e.eta_el},
                          {ix.p_fc[t], 1.0 / e.eta_fc}};
    if (t == 0) {
      cav.push_back({ix.v_cav, -s.cav_initial_frac * e.eps_h});
    } else {
      cav.push_back({ix.e_cav[t - 1], -1.0});
    }
    p.add_row(std::move(cav), Relation::Equal, 0.0, indexed("cav_soc", t));
    p.add_row({{ix.e_cav[t], 1.0}, {ix.v_cav, -e.eps_h}}, Relation::LessEqual, 0.0,
              indexed("cav_cap", t));
    p.add_row({{ix.p_el[t], 1.0}, {ix.v_el, -1.0}}, Relation::LessEqual, 0.0,
              indexed("el_rating", t));
    p.add_row({{ix.p_fc[t], 1.0}, {ix.v_fc, -1.0}}, Relation::LessEqual, 0.0,
              indexed("fc_rating", t));
  }

  // Storage returns to its starting level at the end of the day.
  p.add_row({{ix.e_bess[n - 1], 1.0}, {ix.v_bess, -s.bess_initial_frac}}, Relation::Equal, 0.0,
            "bess_terminal");
  p.add_row({{ix.e_cav[n - 1], 1.0}, {ix.v_cav, -s.cav_initial_frac * e.eps_h}},
            Relation::Equal, 0.0, "cav_terminal");
  // The electrolyzer refills the whole cavern within one day.
  p.add_row({{ix.v_el, kRefillHours * e.eta_el}, {ix.v_cav, -e.eps_h}},
            Relation::GreaterEqual, 0.0, "cav_refill");

  const double tr = static_cast<double>(s.resilience.tr_hours);
  const double energy = s.p_rig_rated * tr;
  switch (s.resilience.mode) {
    case ResilienceMode::Basic:
      break;
    case ResilienceMode::HessOnly:
      p.add_row({{ix.v_fc, 1.0}}, Relation::GreaterEqual, s.p_load_max, "res_fc_power");
      p.add_row({{ix.v_cav, e.eps_h * e.eta_fc}}, Relation::GreaterEqual, energy,
                "res_cav_energy");
      break;
    case ResilienceMode::BessOnly:
      p.add_row({{ix.p_disc_max, 1.0}}, Relation::GreaterEqual, s.p_load_max,
                "res_bess_power");
      p.add_row({{ix.v_bess, e.eta_disc}}, Relation::GreaterEqual, energy, "res_bess_energy");
      break;
    case ResilienceMode::Joint:
      p.add_row({{ix.p_disc_max, 1.0}, {ix.v_fc, 1.0}}, Relation::GreaterEqual, s.p_load_max,
                "res_joint_power");
      p.add_row({{ix.v_bess, e.eta_disc}, {ix.v_cav, e.eps_h * e.eta_fc}},
                Relation::GreaterEqual, energy, "res_joint_energy");
      break;
  }
  return model;
}

ExtractedSolution extract_solution(const milp::MilpSolution& solution,
                                   const VariableIndex& ix) {
  if (solution.status != milp::MilpStatus::Optimal || !solution.has_incumbent()) {
    throw NotOptimalError(std::string("cannot extract a plan from a ") +
                          milp::to_string(solution.status) + " solution");
  }
  const auto& x = solution.values;
  if (x.size() != ix.num_vars()) {
    throw milp::DimensionError("solution size does not match the variable index");
  }
  ExtractedSolution out;
  auto& plan = out.plan;
  plan.wt_count = static_cast<int>(std::lround(x[ix.v_wt]));
  plan.bess_energy = x[ix.v_bess];
  plan.bess_char_power = x[ix.p_char_max];
  plan.bess_disc_power = x[ix.p_disc_max];
  plan.el_power = x[ix.v_el];
  plan.fc_power = x[ix.v_fc];
  plan.cav_mass = x[ix.v_cav];

  auto& d = out.dispatch;
  const std::size_t n = ix.intervals();
  d.resize(n);
  for (std::size_t t = 0; t < n; ++t) {
    d.p_disc[t] = x[ix.p_disc[t]];
    d.p_char[t] = x[ix.p_char[t]];
    d.p_el[t] = x[ix.p_el[t]];
    d.p_fc[t] = x[ix.p_fc[t]];
    d.p_curt[t] = x[ix.p_curt[t]];
    d.e_bess[t] = x[ix.e_bess[t]];
    d.e_cav[t] = x[ix.e_cav[t]];
    d.u_disc[t] = static_cast<int>(std::lround(x[ix.u_disc[t]]));
    d.u_char[t] = static_cast<int>(std::lround(x[ix.u_char[t]]));
  }
  return out;
}

ResilienceBounds resilience_lower_bounds(ResilienceMode mode, int tr_hours,
                                         const ScenarioConfig& s) {
  ResilienceBounds b;
  const double energy = s.p_rig_rated * static_cast<double>(tr_hours);
  const auto& e = s.efficiencies;
  switch (mode) {
    case ResilienceMode::Basic:
      break;
    case ResilienceMode::HessOnly:
      b.fc_power_min = s.p_load_max;
      b.cav_energy_min = energy / e.eta_fc;
      b.cav_mass_min = b.cav_energy_min / e.eps_h;
      break;
    case ResilienceMode::BessOnly:
      b.bess_power_min = s.p_load_max;
      b.bess_energy_min = energy / e.eta_disc;
      break;
    case ResilienceMode::Joint:
      b.joint_power_min = s.p_load_max;
      b.joint_energy_min = energy;
      break;
  }
  return b;
}

}  // namespace ohres
