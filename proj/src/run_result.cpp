#include "ohres/run_result.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <sstream>

#include "ohres/scenario_json.hpp"

namespace ohres {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

void expect_keys(const json& obj, const std::string& where,
                 std::initializer_list<const char*> keys) {
  if (!obj.is_object()) throw ParseError(where + ": expected an object");
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (const char* k : keys) known = known || key == k;
    if (!known) throw ParseError(where + ": unknown key '" + key + "'");
  }
  for (const char* k : keys) {
    if (!obj.contains(k)) throw ParseError(where + ": missing key '" + k + "'");
  }
}

double number(const json& obj, const char* key, const std::string& where) {
  const json& v = obj.at(key);
  if (!v.is_number()) throw ParseError(where + "." + key + ": expected a number");
  return v.get<double>();
}

long long integer(const json& obj, const char* key, const std::string& where) {
  const json& v = obj.at(key);
  if (!v.is_number_integer()) throw ParseError(where + "." + key + ": expected an integer");
  return v.get<long long>();
}

std::string text(const json& obj, const char* key, const std::string& where) {
  const json& v = obj.at(key);
  if (!v.is_string()) throw ParseError(where + "." + key + ": expected a string");
  return v.get<std::string>();
}

template <typename T>
std::vector<T> series(const json& obj, const char* key, std::size_t n, const std::string& where) {
  const json& v = obj.at(key);
  const std::string field = where + "." + key;
  if (!v.is_array()) throw ParseError(field + ": expected an array");
  if (v.size() != n) {
    throw ParseError(field + ": expected " + std::to_string(n) + " entries (got " +
                     std::to_string(v.size()) + ")");
  }
  std::vector<T> out;
  out.reserve(n);
  for (const json& x : v) {
    if constexpr (std::is_integral_v<T>) {
      if (!x.is_number_integer()) throw ParseError(field + ": expected integers");
    } else {
      if (!x.is_number()) throw ParseError(field + ": expected numbers");
    }
    out.push_back(x.get<T>());
  }
  return out;
}

// Non-finite solver figures (no incumbent, no bound) are stored as strings.
ordered_json real(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

double real_from(const json& obj, const char* key, const std::string& where) {
  const json& v = obj.at(key);
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  return number(obj, key, where);
}

ordered_json subsystem_json(const SubsystemCost& c) {
  return {{"capital", c.capital}, {"om_lifetime", c.om_lifetime}};
}

SubsystemCost subsystem_from(const json& obj, const char* key) {
  const std::string where = std::string("costs.") + key;
  const json& c = obj.at(key);
  expect_keys(c, where, {"capital", "om_lifetime"});
  return {number(c, "capital", where), number(c, "om_lifetime", where)};
}

}  // namespace

milp::MilpStatus parse_status(std::string_view name) {
  for (auto s : {milp::MilpStatus::Optimal, milp::MilpStatus::Infeasible,
                 milp::MilpStatus::NodeLimit, milp::MilpStatus::Unbounded}) {
    if (name == milp::to_string(s)) return s;
  }
  throw ParseError("unknown solver status '" + std::string(name) + "'");
}

RunResult make_run_result(const ScenarioConfig& scenario, std::string scenario_path,
                          const PlanOutcome& outcome) {
  RunResult r;
  r.scenario_path = std::move(scenario_path);
  r.scenario = scenario;
  r.scenario_hash = scenario_hash(scenario);
  r.status = outcome.status;
  r.plan = outcome.plan;
  r.dispatch = outcome.dispatch;
  if (r.dispatch.intervals() != scenario.intervals()) r.dispatch.resize(scenario.intervals());
  r.costs = outcome.costs;
  r.solver = {outcome.objective, outcome.root_relaxation, outcome.relative_gap, outcome.nodes,
              outcome.wall_seconds};
  return r;
}

std::string serialize_run_result(const RunResult& r) {
  ordered_json doc;
  doc["scenario"] = {{"path", r.scenario_path},
                     {"hash", r.scenario_hash},
                     {"config", scenario_to_json(r.scenario)}};
  doc["resilience"] = {{"mode", std::string(mode_name(r.scenario.resilience.mode))},
                       {"tr_hours", r.scenario.resilience.tr_hours}};
  doc["status"] = milp::to_string(r.status);
  const auto& p = r.plan;
  doc["plan"] = {{"wt_count", p.wt_count},
                 {"bess_energy", p.bess_energy},
                 {"bess_char_power", p.bess_char_power},
                 {"bess_disc_power", p.bess_disc_power},
                 {"el_power", p.el_power},
                 {"fc_power", p.fc_power},
                 {"cav_mass", p.cav_mass}};
  const auto& d = r.dispatch;
  doc["dispatch"] = {{"p_disc", d.p_disc}, {"p_char", d.p_char}, {"p_el", d.p_el},
                     {"p_fc", d.p_fc},     {"p_curt", d.p_curt}, {"e_bess", d.e_bess},
                     {"e_cav", d.e_cav},   {"u_disc", d.u_disc}, {"u_char", d.u_char}};
  const auto& c = r.costs;
  doc["costs"] = {{"wt", subsystem_json(c.wt)},
                  {"bess", subsystem_json(c.bess)},
                  {"el", subsystem_json(c.el)},
                  {"fc", subsystem_json(c.fc)},
                  {"comp", subsystem_json(c.comp)},
                  {"cav", subsystem_json(c.cav)},
                  {"capital_total", c.capital_total},
                  {"operation_total", c.operation_total},
                  {"grand_total", c.grand_total},
                  {"average_cost", c.average_cost},
                  {"lifetime_energy", c.lifetime_energy}};
  doc["solver"] = {{"objective", real(r.solver.objective)},
                   {"nodes", r.solver.nodes},
                   {"relative_gap", real(r.solver.relative_gap)},
                   {"root_relaxation", real(r.solver.root_relaxation)}};
  return doc.dump(2) + "\n";
}

RunResult parse_run_result(std::string_view body) {
  json doc;
  try {
    doc = json::parse(body);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed result document: ") + e.what());
  }
  expect_keys(doc, "result",
              {"scenario", "resilience", "status", "plan", "dispatch", "costs", "solver"});

  RunResult r;
  const json& sc = doc.at("scenario");
  expect_keys(sc, "scenario", {"path", "hash", "config"});
  r.scenario_path = text(sc, "path", "scenario");
  r.scenario_hash = text(sc, "hash", "scenario");
  r.scenario = scenario_from_json(sc.at("config"));
  validate(r.scenario, r.scenario.intervals());
  if (scenario_hash(r.scenario) != r.scenario_hash) {
    throw ParseError("scenario.hash does not match the embedded scenario");
  }

  const json& res = doc.at("resilience");
  expect_keys(res, "resilience", {"mode", "tr_hours"});
  if (parse_mode(text(res, "mode", "resilience")) != r.scenario.resilience.mode ||
      integer(res, "tr_hours", "resilience") != r.scenario.resilience.tr_hours) {
    throw ParseError("resilience does not match the embedded scenario");
  }

  if (!doc.at("status").is_string()) throw ParseError("status: expected a string");
  r.status = parse_status(doc.at("status").get<std::string>());

  const json& p = doc.at("plan");
  expect_keys(p, "plan",
              {"wt_count", "bess_energy", "bess_char_power", "bess_disc_power", "el_power",
               "fc_power", "cav_mass"});
  r.plan.wt_count = static_cast<int>(integer(p, "wt_count", "plan"));
  r.plan.bess_energy = number(p, "bess_energy", "plan");
  r.plan.bess_char_power = number(p, "bess_char_power", "plan");
  r.plan.bess_disc_power = number(p, "bess_disc_power", "plan");
  r.plan.el_power = number(p, "el_power", "plan");
  r.plan.fc_power = number(p, "fc_power", "plan");
  r.plan.cav_mass = number(p, "cav_mass", "plan");

  const json& d = doc.at("dispatch");
  expect_keys(d, "dispatch",
              {"p_disc", "p_char", "p_el", "p_fc", "p_curt", "e_bess", "e_cav", "u_disc",
               "u_char"});
  const std::size_t n = r.scenario.intervals();
  r.dispatch.p_disc = series<double>(d, "p_disc", n, "dispatch");
  r.dispatch.p_char = series<double>(d, "p_char", n, "dispatch");
  r.dispatch.p_el = series<double>(d, "p_el", n, "dispatch");
  r.dispatch.p_fc = series<double>(d, "p_fc", n, "dispatch");
  r.dispatch.p_curt = series<double>(d, "p_curt", n, "dispatch");
  r.dispatch.e_bess = series<double>(d, "e_bess", n, "dispatch");
  r.dispatch.e_cav = series<double>(d, "e_cav", n, "dispatch");
  r.dispatch.u_disc = series<int>(d, "u_disc", n, "dispatch");
  r.dispatch.u_char = series<int>(d, "u_char", n, "dispatch");

  const json& c = doc.at("costs");
  expect_keys(c, "costs",
              {"wt", "bess", "el", "fc", "comp", "cav", "capital_total", "operation_total",
               "grand_total", "average_cost", "lifetime_energy"});
  r.costs.wt = subsystem_from(c, "wt");
  r.costs.bess = subsystem_from(c, "bess");
  r.costs.el = subsystem_from(c, "el");
  r.costs.fc = subsystem_from(c, "fc");
  r.costs.comp = subsystem_from(c, "comp");
  r.costs.cav = subsystem_from(c, "cav");
  r.costs.capital_total = number(c, "capital_total", "costs");
  r.costs.operation_total = number(c, "operation_total", "costs");
  r.costs.grand_total = number(c, "grand_total", "costs");
  r.costs.average_cost = number(c, "average_cost", "costs");
  r.costs.lifetime_energy = number(c, "lifetime_energy", "costs");

  const json& s = doc.at("solver");
  expect_keys(s, "solver", {"objective", "nodes", "relative_gap", "root_relaxation"});
  r.solver.objective = real_from(s, "objective", "solver");
  const long long nodes = integer(s, "nodes", "solver");
  if (nodes < 0) throw ParseError("solver.nodes: must be >= 0");
  r.solver.nodes = static_cast<std::size_t>(nodes);
  r.solver.relative_gap = real_from(s, "relative_gap", "solver");
  r.solver.root_relaxation = real_from(s, "root_relaxation", "solver");
  return r;
}

RunResult load_run_result(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open result file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_run_result(buf.str());
}

void save_run_result(const RunResult& result, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write result file '" + path.string() + "'");
  out << serialize_run_result(result);
  if (!out) throw std::runtime_error("failed writing result file '" + path.string() + "'");
}

}  // namespace ohres
