#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <string>

#include "ohres/analysis.hpp"
#include "om_fit.hpp"
#include "reference_cases.hpp"

using namespace ohres;

namespace {

ScenarioConfig with_mode(ResilienceMode mode, int tr) {
  ScenarioConfig s = default_parameters();
  s.resilience = {mode, tr};
  return s;
}

}  // namespace

TEST_CASE("basic reference plan costs") {
  const auto b = cost_breakdown(reference::kCases[0].plan, default_parameters());
  CHECK(std::abs(b.capital_total - 867.51) <= 0.5);
  CHECK(std::abs(b.operation_total - 51.78) <= 0.5);
  CHECK(std::abs(b.average_cost - 104.94) <= 0.2);
  CHECK(b.grand_total == doctest::Approx(b.capital_total + b.operation_total));
  CHECK(b.lifetime_energy == 8'760'000.0);
  CHECK(b.comp.om_lifetime == 0.0);
}

TEST_CASE("battery-only reference plan costs") {
  const auto b = cost_breakdown(reference::kCases[2].plan, default_parameters());
  CHECK(std::abs(b.capital_total - 950.53) <= 0.1);
  CHECK(std::abs(b.operation_total - 99.33) <= 0.1);
}

TEST_CASE("every reference plan reproduces its cost cells") {
  const ScenarioConfig s = default_parameters();
  for (const auto& c : reference::kCases) {
    CAPTURE(c.model);
    CAPTURE(c.tr_hours);
    const auto b = cost_breakdown(c.plan, s);
    CHECK(std::abs(b.capital_total - c.capital) <= 0.5);
    CHECK(std::abs(b.operation_total - c.operation) <= 0.5);
    CHECK(std::abs(b.grand_total - c.total) <= 0.5);
    CHECK(std::abs(b.average_cost - c.average) <= 0.2);
  }
}

TEST_CASE("zero plan costs nothing") {
  const auto b = cost_breakdown(PlanDecision{}, default_parameters());
  CHECK(b.capital_total == 0.0);
  CHECK(b.operation_total == 0.0);
  CHECK(b.grand_total == 0.0);
  CHECK(b.average_cost == 0.0);
}

TEST_CASE("average energy cost") {
  CHECK(average_energy_cost(919.28, 50, 20) == doctest::Approx(104.94).epsilon(1e-4));
  CHECK(average_energy_cost(1022.08, 50, 20) == doctest::Approx(116.68).epsilon(1e-4));
  CHECK(average_energy_cost(0, 50, 20) == 0.0);
  CHECK_THROWS_AS(average_energy_cost(1, 0, 20), std::invalid_argument);
  CHECK_THROWS_AS(average_energy_cost(1, 50, 0), std::invalid_argument);
}

TEST_CASE("traditional benchmark") {
  const ScenarioConfig s = default_parameters();
  const auto t = traditional_benchmark(s);
  CHECK(std::abs(t.average_cost - reference::kTraditionalAverage) <= 0.05);
  CHECK(std::abs(t.total_emissions - reference::kTraditionalEmissions) <= 500.0);
  CHECK(t.operation_total == doctest::Approx(reference::kTraditionalOperation));
  CHECK(t.grand_total == doctest::Approx(800.9));
  CHECK(kRenewableEmissions == 0.0);

  const auto clean = traditional_benchmark(s, {12.5, 90.0, 0.0});
  CHECK(clean.total_emissions == 0.0);
  const auto no_fuel = traditional_benchmark(s, {12.5, 0.0, 0.0601});
  CHECK(no_fuel.average_cost == doctest::Approx(12.5e6 / 8.76e6));
  CHECK_THROWS_AS(traditional_benchmark(s, {-1.0, 90.0, 0.06}), std::invalid_argument);
}

TEST_CASE("O&M rates refit from reported operation costs") {
  const ScenarioConfig s = default_parameters();
  const auto fit = reference::refit_om_rates(s.lifetime_years);
  const double shipped[4] = {s.costs.wt_om, s.costs.bess_om, s.costs.el_om, s.costs.fc_om};
  for (int i = 0; i < 4; ++i) {
    CAPTURE(i);
    CHECK(std::abs(fit[i] - shipped[i]) <= 0.01 * shipped[i]);
  }
}

TEST_CASE("objective reconciles with the cost breakdown") {
  for (auto mode : {ResilienceMode::Basic, ResilienceMode::HessOnly}) {
    const auto out = plan_system(with_mode(mode, 6));
    REQUIRE(out.optimal());
    CHECK(std::abs(out.costs.grand_total - out.objective) <= 1e-6 * std::abs(out.objective));
    CHECK(out.root_relaxation <= out.objective + 1e-9);
  }
}

TEST_CASE("battery-only duration sweep") {
  const int tr[] = {6, 12, 18, 24};
  const auto rows = sweep_resilience(default_parameters(), ResilienceMode::BessOnly, tr,
                                     SweepOptions{{}, 2});
  REQUIRE(rows.size() == 4);
  const double expected[] = {315.79, 631.58, 947.37, 1263.16};
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(rows[i].tr_hours == tr[i]);
    REQUIRE(rows[i].outcome.optimal());
    CHECK(std::abs(rows[i].outcome.plan.bess_energy - expected[i]) <= 0.01);
  }
}

TEST_CASE("joint duration sweep is monotone and matches standalone solves") {
  const int tr[] = {6, 12, 18, 24};
  const auto rows = sweep_resilience(default_parameters(), ResilienceMode::Joint, tr);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    REQUIRE(rows[i].outcome.optimal());
    CHECK(rows[i].outcome.costs.grand_total >= rows[i - 1].outcome.costs.grand_total - 1e-9);
  }
  const auto single = plan_system(with_mode(ResilienceMode::Joint, 6));
  const std::vector<ResilienceSweepRow> one{rows[0]};
  const std::vector<ResilienceSweepRow> alone{{6, single}};
  CHECK(resilience_sweep_csv(one) == resilience_sweep_csv(alone));
  CHECK(single.objective == rows[0].outcome.objective);
}

TEST_CASE("negative durations are rejected") {
  const int tr[] = {6, -1};
  CHECK_THROWS_AS(sweep_resilience(default_parameters(), ResilienceMode::Joint, tr),
                  std::invalid_argument);
}

TEST_CASE("unit cost grid") {
  const ScenarioConfig s = default_parameters();
  const CostAxis bess{"bess_capital", {0.28, 0.35, 0.42}};
  const CostAxis wt{"wt_capital", {16.0, 20.0, 24.0}};
  const auto cells = sweep_unit_costs(s, ResilienceMode::Basic, 0, bess, wt, {{}, 3});
  REQUIRE(cells.size() == 9);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      const auto& c = cells[i * 3 + j];
      CHECK(c.value1 == bess.values[i]);
      CHECK(c.value2 == wt.values[j]);
      REQUIRE(c.outcome.optimal());
      // Both capacities are bought in every cell, so cost rises along each axis.
      CHECK(c.outcome.plan.wt_count > 0);
      CHECK(c.outcome.plan.bess_energy > 0.0);
      if (j > 0) CHECK(c.outcome.costs.average_cost >= cells[i * 3 + j - 1].outcome.costs.average_cost - 1e-9);
      if (i > 0) CHECK(c.outcome.costs.average_cost >= cells[(i - 1) * 3 + j].outcome.costs.average_cost - 1e-9);
    }
  }
  const auto plain = plan_system(s);
  CHECK(format_fixed(cells[4].outcome.costs.average_cost, 2) ==
        format_fixed(plain.costs.average_cost, 2));

  const auto csv = cost_grid_csv(cells);
  CHECK(csv.rfind("param1,value1,param2,value2,avg_usd_per_mwh,status\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 10);
}

TEST_CASE("cost parameters by name") {
  ScenarioConfig s = default_parameters();
  for (const auto& name : sweepable_cost_parameters()) CHECK_NOTHROW(set_cost_parameter(s, name, 1.0));
  CHECK(s.costs.fc_capital == 1.0);
  CHECK_THROWS_AS(set_cost_parameter(s, "diesel_capital", 1.0), UnknownParameterError);
  const CostAxis bad{"diesel_capital", {1.0}};
  const CostAxis ok{"wt_capital", {20.0}};
  CHECK_THROWS_AS(sweep_unit_costs(s, ResilienceMode::Basic, 0, bad, ok), UnknownParameterError);
  const CostAxis negative{"wt_capital", {-1.0}};
  CHECK_THROWS_AS(sweep_unit_costs(s, ResilienceMode::Basic, 0, ok, negative),
                  std::invalid_argument);
}

TEST_CASE("CSV rendering") {
  CHECK(format_fixed(-0.001, 2) == "0.00");
  CHECK(format_fixed(15151.515, 1) == "15151.5");
  CHECK(format_fixed(2.0, 2) == "2.00");

  ScenarioConfig starved = default_parameters();
  starved.wt_count_max = 1;
  ResilienceSweepRow row{0, plan_system(starved)};
  CHECK(row.outcome.status == milp::MilpStatus::Infeasible);
  const std::vector<ResilienceSweepRow> rows{row};
  CHECK(resilience_sweep_csv(rows) ==
        "tr_hours,wt_count,bess_mwh,el_mw,fc_mw,cav_kg,capital_musd,operation_musd,"
        "total_musd,avg_usd_per_mwh,status\n0,,,,,,,,,,infeasible\n");
}
