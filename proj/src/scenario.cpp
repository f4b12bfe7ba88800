#include "ohres/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

#include "ohres/scenario_json.hpp"

namespace ohres {

using nlohmann::json;
using nlohmann::ordered_json;

double TimeSeriesProfile::max() const {
  if (values.empty()) return 0.0;
  return *std::max_element(values.begin(), values.end());
}

ResilienceMode parse_mode(std::string_view name) {
  if (name == "basic") return ResilienceMode::Basic;
  if (name == "hess") return ResilienceMode::HessOnly;
  if (name == "bess") return ResilienceMode::BessOnly;
  if (name == "joint") return ResilienceMode::Joint;
  throw ParseError("unknown resilience mode '" + std::string(name) +
                   "' (expected basic, hess, bess or joint)");
}

std::string_view mode_name(ResilienceMode mode) {
  switch (mode) {
    case ResilienceMode::Basic: return "basic";
    case ResilienceMode::HessOnly: return "hess";
    case ResilienceMode::BessOnly: return "bess";
    case ResilienceMode::Joint: return "joint";
  }
  return "basic";
}

namespace {

void require(bool ok, const char* field, const std::string& what) {
  if (!ok) throw ValidationError(field, what);
}

void require_nonnegative(double v, const char* field) {
  require(std::isfinite(v) && v >= 0.0, field, "must be a finite value >= 0");
}

void require_fraction(double v, const char* field) {
  require(std::isfinite(v) && v > 0.0 && v <= 1.0, field, "must lie in (0, 1]");
}

void check_profile(const TimeSeriesProfile& p, std::size_t intervals,
                   const char* field) {
  require(p.size() == intervals, field,
          "profile must have " + std::to_string(intervals) + " entries (got " +
              std::to_string(p.size()) + ")");
  for (double v : p.values) {
    require(std::isfinite(v) && v >= 0.0, field,
            "profile entries must be finite and >= 0");
  }
}

}  // namespace

void validate(const ScenarioConfig& s, std::size_t intervals) {
  const auto& c = s.costs;
  require_nonnegative(c.wt_capital, "costs.wt_capital");
  require_nonnegative(c.bess_capital, "costs.bess_capital");
  require_nonnegative(c.el_capital, "costs.el_capital");
  require_nonnegative(c.fc_capital, "costs.fc_capital");
  require_nonnegative(c.comp_capital, "costs.comp_capital");
  require_nonnegative(c.cav_capital_per_mwh, "costs.cav_capital_per_mwh");
  require_nonnegative(c.wt_om, "costs.wt_om");
  require_nonnegative(c.bess_om, "costs.bess_om");
  require_nonnegative(c.el_om, "costs.el_om");
  require_nonnegative(c.fc_om, "costs.fc_om");
  require_nonnegative(c.cav_om, "costs.cav_om");

  const auto& e = s.efficiencies;
  require_fraction(e.eta_char, "efficiencies.eta_char");
  require_fraction(e.eta_disc, "efficiencies.eta_disc");
  require_fraction(e.eta_el, "efficiencies.eta_el");
  require_fraction(e.eta_fc, "efficiencies.eta_fc");
  require(std::isfinite(e.eps_h) && e.eps_h > 0.0, "efficiencies.eps_h",
          "must be > 0");

  check_profile(s.load_profile, intervals, "profiles.load");
  check_profile(s.wind_unit_profile, intervals, "profiles.wind_unit");

  require(std::isfinite(s.wt_unit_rating) && s.wt_unit_rating > 0.0,
          "platform.wt_unit_rating", "must be > 0");
  require(s.wind_unit_profile.max() <= s.wt_unit_rating,
          "profiles.wind_unit", "entries must not exceed wt_unit_rating");
  require(std::isfinite(s.p_rig_rated) && s.p_rig_rated > 0.0,
          "platform.p_rig_rated", "must be > 0");
  require(std::isfinite(s.p_load_max) && s.p_load_max >= s.load_profile.max(),
          "platform.p_load_max", "must be >= the peak of the load profile");
  require(s.lifetime_years >= 1, "platform.lifetime_years", "must be >= 1");
  require(std::isfinite(s.bess_initial_frac) && s.bess_initial_frac >= 0.0 &&
              s.bess_initial_frac <= 1.0,
          "platform.bess_initial_frac", "must lie in [0, 1]");
  require(std::isfinite(s.cav_initial_frac) && s.cav_initial_frac >= 0.0 &&
              s.cav_initial_frac <= 1.0,
          "platform.cav_initial_frac", "must lie in [0, 1]");
  require_nonnegative(s.p_bess_min, "platform.p_bess_min");

  require(s.resilience.tr_hours >= 0, "resilience.tr_hours", "must be >= 0");

  require(std::isfinite(s.big_m) && s.big_m >= s.p_load_max, "solver.big_m",
          "must be >= p_load_max");
  require(s.wt_count_max >= 1, "solver.wt_count_max", "must be >= 1");
}

ScenarioConfig default_parameters() {
  ScenarioConfig s;
  s.costs = CostParameters{
      .wt_capital = 20.0,
      .bess_capital = 0.35,
      .el_capital = 1.2,
      .fc_capital = 1.0,
      .comp_capital = 0.04,
      .cav_capital_per_mwh = 0.035,
      .wt_om = 0.043062,
      .bess_om = 0.010,
      .el_om = 0.024009,
      .fc_om = 0.012963,
      .cav_om = 0.0,
  };
  s.efficiencies = EfficiencyParameters{
      .eta_char = 0.95,
      .eta_disc = 0.95,
      .eta_el = 0.7,
      .eta_fc = 0.6,
      .eps_h = 0.033,
  };
  // Synthetic day: near-flat platform load and a per-turbine wind profile with
  // a shallow mid-day trough.
  s.load_profile.values = {48.4, 48.2, 48.0, 47.9, 48.1, 48.6, 49.1, 49.5,
                           49.8, 50.0, 49.9, 49.7, 49.6, 49.8, 50.0, 49.9,
                           49.7, 49.5, 49.3, 49.1, 48.9, 48.8, 48.6, 48.5};
  s.wind_unit_profile.values = {1.42, 1.46, 1.50, 1.52, 1.48, 1.40, 1.30, 1.20,
                                1.08, 0.96, 0.86, 0.80, 0.78, 0.82, 0.90, 1.00,
                                1.10, 1.20, 1.28, 1.34, 1.38, 1.40, 1.42, 1.42};
  s.wt_unit_rating = 3.0;
  s.p_rig_rated = 50.0;
  s.p_load_max = 50.0;
  s.lifetime_years = 20;
  s.resilience = {ResilienceMode::Basic, 0};
  s.bess_initial_frac = 0.5;
  s.cav_initial_frac = 0.5;
  s.big_m = 100.0;
  s.wt_count_max = 80;
  s.p_bess_min = 0.0;
  return s;
}

// ---------------------------------------------------------------------------
// JSON mapping

namespace {

class ObjectReader {
 public:
  ObjectReader(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) throw ParseError(path_ + ": expected an object");
  }

  void allow(std::initializer_list<const char*> keys) const {
    std::set<std::string> known(keys.begin(), keys.end());
    for (const auto& [key, value] : obj_.items()) {
      if (!known.count(key)) throw ParseError(path_ + ": unknown key '" + key + "'");
    }
  }

  const json& at(const char* key) const {
    auto it = obj_.find(key);
    if (it == obj_.end()) throw ParseError(path_ + ": missing key '" + key + "'");
    return *it;
  }

  bool has(const char* key) const { return obj_.contains(key); }

  double number(const char* key) const {
    const json& v = at(key);
    if (!v.is_number()) throw ParseError(field(key) + ": expected a number");
    return v.get<double>();
  }

  int integer(const char* key) const {
    const json& v = at(key);
    if (!v.is_number_integer()) throw ParseError(field(key) + ": expected an integer");
    return v.get<int>();
  }

  std::string string(const char* key) const {
    const json& v = at(key);
    if (!v.is_string()) throw ParseError(field(key) + ": expected a string");
    return v.get<std::string>();
  }

  std::vector<double> numbers(const char* key) const {
    const json& v = at(key);
    if (!v.is_array()) throw ParseError(field(key) + ": expected an array");
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto& x : v) {
      if (!x.is_number()) throw ParseError(field(key) + ": expected numbers");
      out.push_back(x.get<double>());
    }
    return out;
  }

  ObjectReader child(const char* key) const { return ObjectReader(at(key), field(key)); }

 private:
  std::string field(const char* key) const { return path_ + "." + key; }

  const json& obj_;
  std::string path_;
};

}  // namespace

ordered_json scenario_to_json(const ScenarioConfig& s) {
  const auto& c = s.costs;
  const auto& e = s.efficiencies;
  ordered_json doc;
  doc["costs"] = {
      {"wt_capital", c.wt_capital},   {"bess_capital", c.bess_capital},
      {"el_capital", c.el_capital},   {"fc_capital", c.fc_capital},
      {"comp_capital", c.comp_capital},
      {"cav_capital_per_mwh", c.cav_capital_per_mwh},
      {"wt_om", c.wt_om},             {"bess_om", c.bess_om},
      {"el_om", c.el_om},             {"fc_om", c.fc_om},
      {"cav_om", c.cav_om},
  };
  doc["efficiencies"] = {
      {"eta_char", e.eta_char}, {"eta_disc", e.eta_disc}, {"eta_el", e.eta_el},
      {"eta_fc", e.eta_fc},     {"eps_h", e.eps_h},
  };
  doc["profiles"] = {
      {"load", s.load_profile.values},
      {"wind_unit", s.wind_unit_profile.values},
  };
  doc["platform"] = {
      {"p_rig_rated", s.p_rig_rated},
      {"p_load_max", s.p_load_max},
      {"wt_unit_rating", s.wt_unit_rating},
      {"lifetime_years", s.lifetime_years},
      {"bess_initial_frac", s.bess_initial_frac},
      {"cav_initial_frac", s.cav_initial_frac},
      {"p_bess_min", s.p_bess_min},
  };
  doc["resilience"] = {
      {"mode", std::string(mode_name(s.resilience.mode))},
      {"tr_hours", s.resilience.tr_hours},
  };
  doc["solver"] = {{"big_m", s.big_m}, {"wt_count_max", s.wt_count_max}};
  return doc;
}

ScenarioConfig scenario_from_json(const json& doc) {
  ObjectReader root(doc, "scenario");
  root.allow({"costs", "efficiencies", "profiles", "platform", "resilience", "solver"});

  ScenarioConfig s;

  auto costs = root.child("costs");
  costs.allow({"wt_capital", "bess_capital", "el_capital", "fc_capital",
               "comp_capital", "cav_capital_per_mwh", "wt_om", "bess_om",
               "el_om", "fc_om", "cav_om"});
  s.costs.wt_capital = costs.number("wt_capital");
  s.costs.bess_capital = costs.number("bess_capital");
  s.costs.el_capital = costs.number("el_capital");
  s.costs.fc_capital = costs.number("fc_capital");
  s.costs.comp_capital = costs.number("comp_capital");
  s.costs.cav_capital_per_mwh = costs.number("cav_capital_per_mwh");
  s.costs.wt_om = costs.number("wt_om");
  s.costs.bess_om = costs.number("bess_om");
  s.costs.el_om = costs.number("el_om");
  s.costs.fc_om = costs.number("fc_om");
  s.costs.cav_om = costs.number("cav_om");

  auto eff = root.child("efficiencies");
  eff.allow({"eta_char", "eta_disc", "eta_el", "eta_fc", "eps_h"});
  s.efficiencies.eta_char = eff.number("eta_char");
  s.efficiencies.eta_disc = eff.number("eta_disc");
  s.efficiencies.eta_el = eff.number("eta_el");
  s.efficiencies.eta_fc = eff.number("eta_fc");
  s.efficiencies.eps_h = eff.number("eps_h");

  auto profiles = root.child("profiles");
  profiles.allow({"load", "wind_unit"});
  s.load_profile.values = profiles.numbers("load");
  s.wind_unit_profile.values = profiles.numbers("wind_unit");

  auto platform = root.child("platform");
  platform.allow({"p_rig_rated", "p_load_max", "wt_unit_rating", "lifetime_years",
                  "bess_initial_frac", "cav_initial_frac", "p_bess_min"});
  s.p_rig_rated = platform.number("p_rig_rated");
  s.p_load_max = platform.number("p_load_max");
  s.wt_unit_rating = platform.number("wt_unit_rating");
  s.lifetime_years = platform.integer("lifetime_years");
  if (platform.has("bess_initial_frac")) s.bess_initial_frac = platform.number("bess_initial_frac");
  if (platform.has("cav_initial_frac")) s.cav_initial_frac = platform.number("cav_initial_frac");
  if (platform.has("p_bess_min")) s.p_bess_min = platform.number("p_bess_min");

  auto res = root.child("resilience");
  res.allow({"mode", "tr_hours"});
  s.resilience.mode = parse_mode(res.string("mode"));
  s.resilience.tr_hours = res.integer("tr_hours");

  auto solver = root.child("solver");
  solver.allow({"big_m", "wt_count_max"});
  s.big_m = solver.number("big_m");
  s.wt_count_max = solver.integer("wt_count_max");
  return s;
}

ScenarioConfig parse_scenario(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed scenario document: ") + e.what());
  }
  ScenarioConfig s = scenario_from_json(doc);
  validate(s);
  return s;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open scenario file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::string serialize_scenario(const ScenarioConfig& scenario) {
  return scenario_to_json(scenario).dump(2);
}

std::string scenario_hash(const ScenarioConfig& scenario) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : serialize_scenario(scenario)) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace ohres
