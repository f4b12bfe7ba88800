#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "ohres/analysis.hpp"
#include "ohres/validation.hpp"

namespace py = pybind11;
using namespace ohres;

namespace {

ScenarioConfig with_resilience(const ScenarioConfig& s, const std::string& mode, int tr) {
  ScenarioConfig out = s;
  out.resilience = {parse_mode(mode), tr};
  validate(out, out.intervals());
  return out;
}

py::dict costs_dict(const CostBreakdown& c) {
  py::dict d;
  auto sub = [](const SubsystemCost& s) {
    py::dict x;
    x["capital"] = s.capital;
    x["om_lifetime"] = s.om_lifetime;
    return x;
  };
  d["wt"] = sub(c.wt);
  d["bess"] = sub(c.bess);
  d["el"] = sub(c.el);
  d["fc"] = sub(c.fc);
  d["comp"] = sub(c.comp);
  d["cav"] = sub(c.cav);
  d["capital_total"] = c.capital_total;
  d["operation_total"] = c.operation_total;
  d["grand_total"] = c.grand_total;
  d["average_cost"] = c.average_cost;
  d["lifetime_energy"] = c.lifetime_energy;
  return d;
}

}  // namespace

PYBIND11_MODULE(ohres, m) {
  m.doc() = "Offshore platform hybrid energy storage planning";

  auto base = py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<ValidationError>(m, "ValidationError", base.ptr());

  py::class_<ScenarioConfig>(m, "Scenario")
      .def_static("default", &default_parameters)
      .def_static("load", [](const std::string& path) { return load_scenario(path); })
      .def_static("from_json", [](const std::string& text) { return parse_scenario(text); })
      .def("to_json", &serialize_scenario)
      .def("hash", &scenario_hash)
      .def("with_resilience", &with_resilience, py::arg("mode"), py::arg("tr_hours") = 0)
      .def("with_cost", [](const ScenarioConfig& s, const std::string& name, double value) {
        ScenarioConfig out = s;
        set_cost_parameter(out, name, value);
        validate(out, out.intervals());
        return out;
      })
      .def_property_readonly("mode", [](const ScenarioConfig& s) {
        return std::string(mode_name(s.resilience.mode));
      })
      .def_property_readonly("tr_hours", [](const ScenarioConfig& s) { return s.resilience.tr_hours; })
      .def_property_readonly("intervals", &ScenarioConfig::intervals)
      .def_readonly("p_rig_rated", &ScenarioConfig::p_rig_rated)
      .def("__eq__", [](const ScenarioConfig& a, const ScenarioConfig& b) { return a == b; });

  py::class_<PlanDecision>(m, "Plan")
      .def(py::init([](int wt, double bess, double el, double fc, double kg, double p_char,
                       double p_disc) {
             return PlanDecision{wt, bess, p_char, p_disc, el, fc, kg};
           }),
           py::arg("wt_count"), py::arg("bess_energy"), py::arg("el_power"), py::arg("fc_power"),
           py::arg("cav_mass"), py::arg("bess_char_power") = 0.0,
           py::arg("bess_disc_power") = 0.0)
      .def_readonly("wt_count", &PlanDecision::wt_count)
      .def_readonly("bess_energy", &PlanDecision::bess_energy)
      .def_readonly("bess_char_power", &PlanDecision::bess_char_power)
      .def_readonly("bess_disc_power", &PlanDecision::bess_disc_power)
      .def_readonly("el_power", &PlanDecision::el_power)
      .def_readonly("fc_power", &PlanDecision::fc_power)
      .def_readonly("cav_mass", &PlanDecision::cav_mass);

  py::class_<PlanOutcome>(m, "Outcome")
      .def_property_readonly("status",
                             [](const PlanOutcome& o) { return milp::to_string(o.status); })
      .def_property_readonly("optimal", &PlanOutcome::optimal)
      .def_readonly("plan", &PlanOutcome::plan)
      .def_property_readonly("costs", [](const PlanOutcome& o) { return costs_dict(o.costs); })
      .def_readonly("objective", &PlanOutcome::objective)
      .def_readonly("relative_gap", &PlanOutcome::relative_gap)
      .def_readonly("nodes", &PlanOutcome::nodes)
      .def_property_readonly("dispatch", [](const PlanOutcome& o) {
        const auto& d = o.dispatch;
        py::dict x;
        x["p_disc"] = d.p_disc;
        x["p_char"] = d.p_char;
        x["p_el"] = d.p_el;
        x["p_fc"] = d.p_fc;
        x["p_curt"] = d.p_curt;
        x["e_bess"] = d.e_bess;
        x["e_cav"] = d.e_cav;
        return x;
      });

  m.def(
      "plan_system", [](const ScenarioConfig& s) { return plan_system(s); },
      py::arg("scenario"), py::call_guard<py::gil_scoped_release>());

  m.def(
      "cost_breakdown",
      [](const PlanDecision& p, const ScenarioConfig& s) { return costs_dict(cost_breakdown(p, s)); },
      py::arg("plan"), py::arg("scenario"));

  m.def(
      "traditional_benchmark",
      [](const ScenarioConfig& s, double capital, double fuel_cost, double emission_rate) {
        const auto t = traditional_benchmark(s, {capital, fuel_cost, emission_rate});
        py::dict d;
        d["lifetime_energy"] = t.lifetime_energy;
        d["operation_total"] = t.operation_total;
        d["grand_total"] = t.grand_total;
        d["average_cost"] = t.average_cost;
        d["total_emissions"] = t.total_emissions;
        return d;
      },
      py::arg("scenario"), py::arg("capital") = BenchmarkInputs{}.capital,
      py::arg("fuel_cost") = BenchmarkInputs{}.fuel_cost_per_mwh,
      py::arg("emission_rate") = BenchmarkInputs{}.emission_rate);

  m.def(
      "sweep_resilience_csv",
      [](const ScenarioConfig& s, const std::string& mode, const std::vector<int>& tr) {
        const auto rows = sweep_resilience(s, parse_mode(mode), tr);
        return resilience_sweep_csv(rows);
      },
      py::arg("scenario"), py::arg("mode"), py::arg("tr_hours"),
      py::call_guard<py::gil_scoped_release>());

  m.def(
      "verify_dispatch",
      [](const PlanOutcome& o, const ScenarioConfig& s) {
        const auto r = verify_dispatch(o.plan, o.dispatch, s);
        py::dict d;
        d["max_power_balance_residual"] = r.max_power_balance_residual;
        d["max_soc_violation"] = r.max_soc_violation;
        d["max_cavern_violation"] = r.max_cavern_violation;
        d["endpoint_errors"] = r.endpoint_errors;
        d["mode_conflicts"] = r.mode_conflicts;
        d["limit_violations"] = r.limit_violations;
        d["clean"] = r.clean();
        return d;
      },
      py::arg("outcome"), py::arg("scenario"));

  m.def(
      "stress_test",
      [](const PlanDecision& p, const ScenarioConfig& s, int tr) {
        const auto r = resilience_stress_test(p, s, tr);
        py::dict d;
        d["survived_hours"] = r.survived_hours;
        d["pass"] = r.pass;
        return d;
      },
      py::arg("plan"), py::arg("scenario"), py::arg("tr_hours"));

  m.attr("renewable_emissions") = kRenewableEmissions;
}
