#include "ohres/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "ohres/analysis.hpp"
#include "ohres/run_result.hpp"
#include "ohres/validation.hpp"

#ifndef OHRES_DATA_DIR
#define OHRES_DATA_DIR "data"
#endif

namespace ohres {

namespace {

// Usage problems detected after CLI11 has accepted the arguments.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ScenarioFlags {
  std::string scenario;
  std::optional<std::string> mode;
  std::optional<int> tr;
};

void add_scenario_flags(CLI::App* cmd, ScenarioFlags& f, bool with_tr) {
  cmd->add_option("--scenario", f.scenario, "scenario file (bundled names are looked up in "
                                            "the seed directory)")
      ->required();
  cmd->add_option("--mode", f.mode, "basic, hess, bess or joint (default: from scenario)");
  if (with_tr) cmd->add_option("--tr", f.tr, "resilience duration, hours");
}

ScenarioConfig load_with_overrides(const ScenarioFlags& f) {
  ScenarioConfig s = load_scenario(resolve_scenario_path(f.scenario));
  if (f.mode) s.resilience.mode = parse_mode(*f.mode);
  if (f.tr) s.resilience.tr_hours = *f.tr;
  if (s.resilience.mode == ResilienceMode::Basic) s.resilience.tr_hours = 0;
  validate(s, s.intervals());
  return s;
}

void write_text(const std::string& path, const std::string& body) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw UsageError("cannot write '" + path + "'");
  file << body;
  if (!file) throw UsageError("failed writing '" + path + "'");
}

// Comma-separated list; every item must parse completely.
template <typename T>
std::vector<T> parse_list(const std::string& text, const char* flag) {
  std::vector<T> out;
  std::istringstream in(text);
  for (std::string item; std::getline(in, item, ',');) {
    T value{};
    std::size_t used = 0;
    try {
      if constexpr (std::is_integral_v<T>) {
        value = std::stoi(item, &used);
      } else {
        value = std::stod(item, &used);
      }
    } catch (const std::exception&) {
      used = 0;
    }
    if (item.empty() || used != item.size()) {
      throw UsageError(std::string(flag) + ": '" + item + "' is not a number");
    }
    out.push_back(value);
  }
  if (out.empty()) throw UsageError(std::string(flag) + " needs at least one value");
  return out;
}

std::string summary_header() {
  return "mode,tr_hours,wt_count,bess_mwh,el_mw,fc_mw,cav_kg,capital_musd,operation_musd,"
         "total_musd,avg_usd_per_mwh,status";
}

std::string summary_row(const RunResult& r) {
  std::ostringstream row;
  row << mode_name(r.scenario.resilience.mode) << ',' << r.scenario.resilience.tr_hours << ',';
  if (r.optimal()) {
    const auto& p = r.plan;
    const auto& c = r.costs;
    row << p.wt_count << ',' << format_fixed(p.bess_energy, 2) << ','
        << format_fixed(p.el_power, 2) << ',' << format_fixed(p.fc_power, 2) << ','
        << format_fixed(p.cav_mass, 1) << ',' << format_fixed(c.capital_total, 2) << ','
        << format_fixed(c.operation_total, 2) << ',' << format_fixed(c.grand_total, 2) << ','
        << format_fixed(c.average_cost, 2) << ',';
  } else {
    row << ",,,,,,,,,";
  }
  row << milp::to_string(r.status);
  return row.str();
}

int cmd_plan(const ScenarioFlags& f, const std::string& out_path, std::ostream& out,
             std::ostream& err) {
  const ScenarioConfig s = load_with_overrides(f);
  const PlanOutcome outcome = plan_system(s);
  const RunResult result = make_run_result(s, f.scenario, outcome);
  if (!out_path.empty()) write_text(out_path, serialize_run_result(result));
  out << summary_header() << '\n' << summary_row(result) << '\n';
  if (!result.optimal()) {
    err << "error: planning problem is " << milp::to_string(result.status) << '\n';
    return kExitFailure;
  }
  return kExitOk;
}

int cmd_sweep_tr(const ScenarioFlags& f, const std::string& list_text, unsigned threads,
                 const std::string& out_path, std::ostream& out) {
  const auto list = parse_list<int>(list_text, "--list");
  const ScenarioConfig s = load_with_overrides(f);
  const auto rows = sweep_resilience(s, s.resilience.mode, list, {{}, threads});
  const std::string csv = resilience_sweep_csv(rows);
  if (out_path.empty()) {
    out << csv;
  } else {
    write_text(out_path, csv);
  }
  return kExitOk;
}

int cmd_sweep_cost(const ScenarioFlags& f, CostAxis a1, const std::string& values1,
                   CostAxis a2, const std::string& values2, unsigned threads,
                   const std::string& out_path, std::ostream& out) {
  a1.values = parse_list<double>(values1, "--values1");
  a2.values = parse_list<double>(values2, "--values2");
  const ScenarioConfig s = load_with_overrides(f);
  const auto cells =
      sweep_unit_costs(s, s.resilience.mode, s.resilience.tr_hours, a1, a2, {{}, threads});
  const std::string csv = cost_grid_csv(cells);
  if (out_path.empty()) {
    out << csv;
  } else {
    write_text(out_path, csv);
  }
  return kExitOk;
}

int cmd_compare(const std::string& path, const BenchmarkInputs& inputs, std::ostream& out,
                std::ostream& err) {
  const RunResult r = load_run_result(path);
  if (!r.optimal()) {
    err << "error: result '" << path << "' holds no optimal plan ("
        << milp::to_string(r.status) << ")\n";
    return kExitFailure;
  }
  const TraditionalBenchmark t = traditional_benchmark(r.scenario, inputs);
  out << "system,capital_musd,operation_musd,total_musd,avg_usd_per_mwh,emissions_t\n";
  out << "OHRES," << format_fixed(r.costs.capital_total, 2) << ','
      << format_fixed(r.costs.operation_total, 2) << ',' << format_fixed(r.costs.grand_total, 2)
      << ',' << format_fixed(r.costs.average_cost, 2) << ','
      << format_fixed(kRenewableEmissions, 0) << '\n';
  out << "Traditional," << format_fixed(t.inputs.capital, 2) << ','
      << format_fixed(t.operation_total, 2) << ',' << format_fixed(t.grand_total, 2) << ','
      << format_fixed(t.average_cost, 2) << ',' << format_fixed(t.total_emissions, 0) << '\n';
  return kExitOk;
}

int cmd_validate(const std::string& path, std::ostream& out) {
  const RunResult r = load_run_result(path);
  nlohmann::ordered_json doc;
  doc["result"] = path;
  doc["status"] = milp::to_string(r.status);
  if (!r.optimal()) {
    doc["clean"] = false;
    out << doc.dump(2) << '\n';
    return kExitFailure;
  }
  const ResidualReport rep = verify_dispatch(r.plan, r.dispatch, r.scenario);
  const int tr = r.scenario.resilience.effective_hours();
  const StressResult stress = resilience_stress_test(r.plan, r.scenario, tr);
  const bool clean = rep.clean();

  doc["residuals"] = {{"max_power_balance_residual", rep.max_power_balance_residual},
                      {"max_soc_violation", rep.max_soc_violation},
                      {"max_cavern_violation", rep.max_cavern_violation},
                      {"endpoint_errors", rep.endpoint_errors},
                      {"mode_conflicts", rep.mode_conflicts},
                      {"limit_violations", rep.limit_violations},
                      {"clean", clean}};
  nlohmann::ordered_json trajectory = nlohmann::ordered_json::array();
  for (const auto& step : stress.trajectory) {
    trajectory.push_back({{"bess_mwh", step.bess_mwh},
                          {"cav_mwh", step.cav_mwh},
                          {"fc_mw", step.fc_mw},
                          {"bess_disc_mw", step.bess_disc_mw}});
  }
  doc["stress"] = {{"tr_hours", tr},
                   {"survived_hours", stress.survived_hours},
                   {"pass", stress.pass},
                   {"trajectory", std::move(trajectory)}};
  doc["clean"] = clean && stress.pass;
  out << doc.dump(2) << '\n';
  return clean && stress.pass ? kExitOk : kExitFailure;
}

}  // namespace

std::filesystem::path seed_directory() {
  if (const char* env = std::getenv("OHRES_SEED_DIR"); env != nullptr && *env != '\0') {
    return env;
  }
  return OHRES_DATA_DIR;
}

std::filesystem::path resolve_scenario_path(const std::string& name) {
  std::filesystem::path given(name);
  std::error_code ec;
  if (std::filesystem::exists(given, ec) || given.is_absolute()) return given;
  std::filesystem::path seeded = seed_directory() / given;
  if (std::filesystem::exists(seeded, ec)) return seeded;
  return given;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Offshore wind, battery and hydrogen storage planning", "ohres"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  ScenarioFlags plan_flags;
  std::string plan_out;
  auto* plan = app.add_subcommand("plan", "size the system for one resilience setting");
  add_scenario_flags(plan, plan_flags, true);
  plan->add_option("--out", plan_out, "result file to write");

  auto* sweep = app.add_subcommand("sweep", "re-solve over a list of settings, CSV output");
  sweep->require_subcommand(1);
  unsigned threads = 1;
  std::string sweep_out;

  ScenarioFlags tr_flags;
  std::string tr_list;
  auto* sweep_tr = sweep->add_subcommand("tr", "sweep the resilience duration");
  add_scenario_flags(sweep_tr, tr_flags, false);
  sweep_tr->add_option("--list", tr_list, "durations in hours, comma separated")->required();
  sweep_tr->add_option("--out", sweep_out, "CSV file (default: standard output)");
  sweep_tr->add_option("--threads", threads, "concurrent solves")->check(CLI::PositiveNumber);

  ScenarioFlags cost_flags;
  CostAxis axis1, axis2;
  std::string values1, values2;
  auto* sweep_cost = sweep->add_subcommand("cost", "sweep two capital-cost rates");
  add_scenario_flags(sweep_cost, cost_flags, true);
  sweep_cost->add_option("--param1", axis1.parameter, "first cost parameter")->required();
  sweep_cost->add_option("--values1", values1, "values, comma separated")->required();
  sweep_cost->add_option("--param2", axis2.parameter, "second cost parameter")->required();
  sweep_cost->add_option("--values2", values2, "values, comma separated")->required();
  sweep_cost->add_option("--out", sweep_out, "CSV file (default: standard output)");
  sweep_cost->add_option("--threads", threads, "concurrent solves")->check(CLI::PositiveNumber);

  std::string compare_result;
  BenchmarkInputs bench;
  auto* compare = app.add_subcommand("compare", "compare a plan with a diesel-fired platform");
  compare->add_option("--result", compare_result, "result file from `plan`")->required();
  compare->add_option("--capital", bench.capital, "diesel plant capital, M$")->capture_default_str();
  compare->add_option("--fuel-cost", bench.fuel_cost_per_mwh, "fuel cost, $/MWh")->capture_default_str();
  compare->add_option("--emission-rate", bench.emission_rate, "t CO2 per MWh")->capture_default_str();

  std::string validate_result;
  auto* validate_cmd = app.add_subcommand("validate", "re-check a result file");
  validate_cmd->add_option("--result", validate_result, "result file from `plan`")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (plan->parsed()) return cmd_plan(plan_flags, plan_out, out, err);
    if (sweep_tr->parsed()) return cmd_sweep_tr(tr_flags, tr_list, threads, sweep_out, out);
    if (sweep_cost->parsed()) {
      return cmd_sweep_cost(cost_flags, axis1, values1, axis2, values2, threads, sweep_out, out);
    }
    if (compare->parsed()) return cmd_compare(compare_result, bench, out, err);
    if (validate_cmd->parsed()) return cmd_validate(validate_result, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ValidationError& e) {
    err << "error: invalid scenario: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace ohres
