#include <doctest.h>

#include <random>
#include <string>

#include <json.hpp>

#include "ohres/cli.hpp"
#include "ohres/scenario.hpp"
#include "ohres/scenario_json.hpp"

using namespace ohres;

namespace {

nlohmann::json default_doc() { return nlohmann::json::parse(serialize_scenario(default_parameters())); }

std::string field_of(const std::string& text) {
  try {
    parse_scenario(text);
  } catch (const ValidationError& e) {
    return e.field();
  }
  return {};
}

}  // namespace

TEST_CASE("bundled scenario carries the reference cost table") {
  const ScenarioConfig s = load_scenario(resolve_scenario_path("default_gom.json"));
  CHECK(s.costs.wt_capital == 20.0);
  CHECK(s.costs.bess_capital == 0.35);
  CHECK(s.costs.el_capital == 1.2);
  CHECK(s.costs.fc_capital == 1.0);
  CHECK(s.costs.comp_capital == 0.04);
  CHECK(s.p_rig_rated == 50.0);
  CHECK(s.lifetime_years == 20);
  CHECK(s == default_parameters());
}

TEST_CASE("calibrated defaults") {
  const ScenarioConfig s = default_parameters();
  CHECK(s.efficiencies.eps_h == doctest::Approx(0.033));
  CHECK(s.costs.bess_om == doctest::Approx(0.010));
  CHECK(s.costs.cav_capital_per_mwh == doctest::Approx(0.035));
  CHECK(s.efficiencies.eta_el == 0.7);
  CHECK(s.efficiencies.eta_fc == 0.6);
  CHECK(s.lifetime_energy() == doctest::Approx(8'760'000.0));
  // 15151.5 kg of hydrogen holds exactly six hours of rated load.
  CHECK(15151.515 * s.efficiencies.eps_h * s.efficiencies.eta_fc ==
        doctest::Approx(300.0).epsilon(1e-6));
  CHECK_NOTHROW(validate(s));
}

TEST_CASE("short profile is rejected with the offending field") {
  auto doc = default_doc();
  doc["profiles"]["load"].erase(doc["profiles"]["load"].size() - 1);
  try {
    parse_scenario(doc.dump());
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(e.field() == "profiles.load");
    CHECK(std::string(e.what()).find("profile must have 24 entries") != std::string::npos);
  }
}

TEST_CASE("invalid values name their field") {
  auto doc = default_doc();
  doc["efficiencies"]["eta_fc"] = 1.2;
  CHECK(field_of(doc.dump()) == "efficiencies.eta_fc");

  doc = default_doc();
  doc["costs"]["wt_capital"] = -1.0;
  CHECK(field_of(doc.dump()) == "costs.wt_capital");

  doc = default_doc();
  doc["resilience"]["tr_hours"] = -6;
  CHECK(field_of(doc.dump()) == "resilience.tr_hours");

  doc = default_doc();
  doc["solver"]["big_m"] = 10.0;
  CHECK(field_of(doc.dump()) == "solver.big_m");

  doc = default_doc();
  doc["profiles"]["wind_unit"][0] = 3.5;
  CHECK(field_of(doc.dump()) == "profiles.wind_unit");
}

TEST_CASE("document structure is checked strictly") {
  auto doc = default_doc();
  doc["costs"]["diesel"] = 1.0;
  CHECK_THROWS_AS(parse_scenario(doc.dump()), ParseError);

  doc = default_doc();
  doc.erase("solver");
  CHECK_THROWS_AS(parse_scenario(doc.dump()), ParseError);

  doc = default_doc();
  doc["platform"]["lifetime_years"] = 20.5;
  CHECK_THROWS_AS(parse_scenario(doc.dump()), ParseError);

  doc = default_doc();
  doc["resilience"]["mode"] = "diesel";
  CHECK_THROWS_AS(parse_scenario(doc.dump()), ParseError);

  CHECK_THROWS_AS(parse_scenario("{ not json"), ParseError);
  CHECK_THROWS_AS(load_scenario("/nonexistent/scenario.json"), ParseError);
}

TEST_CASE("reference efficiencies are accepted") {
  auto doc = default_doc();
  doc["efficiencies"]["eta_fc"] = 0.6;
  doc["efficiencies"]["eta_el"] = 0.7;
  CHECK_NOTHROW(parse_scenario(doc.dump()));
}

TEST_CASE("mode names") {
  for (auto m : {ResilienceMode::Basic, ResilienceMode::HessOnly, ResilienceMode::BessOnly,
                 ResilienceMode::Joint}) {
    CHECK(parse_mode(mode_name(m)) == m);
  }
  CHECK_THROWS_AS(parse_mode("Joint"), ParseError);
  ResilienceSpec basic{ResilienceMode::Basic, 99};
  CHECK(basic.effective_hours() == 0);
}

TEST_CASE("serialization round-trips perturbed scenarios") {
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> scale(0.5, 1.5);
  std::uniform_int_distribution<int> hours(0, 48);
  for (int k = 0; k < 40; ++k) {
    ScenarioConfig s = default_parameters();
    s.costs.wt_capital *= scale(rng);
    s.costs.bess_om *= scale(rng);
    s.efficiencies.eps_h *= scale(rng);
    for (double& v : s.load_profile.values) v *= 0.9 + 0.1 * scale(rng) / 1.5;
    for (double& v : s.wind_unit_profile.values) v *= scale(rng) / 1.5;
    s.resilience = {static_cast<ResilienceMode>(k % 4), hours(rng)};
    s.bess_initial_frac = scale(rng) - 0.5;
    REQUIRE_NOTHROW(validate(s));
    const ScenarioConfig back = parse_scenario(serialize_scenario(s));
    CHECK(back == s);
    CHECK(scenario_hash(back) == scenario_hash(s));
  }
}

TEST_CASE("hash tracks content") {
  ScenarioConfig a = default_parameters();
  ScenarioConfig b = a;
  CHECK(scenario_hash(a) == scenario_hash(b));
  CHECK(scenario_hash(a).size() == 16);
  b.costs.fc_capital = 1.01;
  CHECK(scenario_hash(a) != scenario_hash(b));
}
