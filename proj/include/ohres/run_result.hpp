#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "ohres/analysis.hpp"
#include "ohres/scenario.hpp"

namespace ohres {

struct SolverStats {
  double objective = 0.0;  // M$
  double root_relaxation = 0.0;
  double relative_gap = 0.0;
  std::size_t nodes = 0;
  double wall_seconds = 0.0;  // not written to disk; reruns must be byte-identical
};

/// Everything one `plan` run produced, as stored in a result file.
struct RunResult {
  std::string scenario_path;
  std::string scenario_hash;
  ScenarioConfig scenario;  // resilience field carries the solved setting
  milp::MilpStatus status = milp::MilpStatus::Infeasible;
  PlanDecision plan;
  DispatchSchedule dispatch;
  CostBreakdown costs;
  SolverStats solver;

  bool optimal() const noexcept { return status == milp::MilpStatus::Optimal; }
};

RunResult make_run_result(const ScenarioConfig& scenario, std::string scenario_path,
                          const PlanOutcome& outcome);

std::string serialize_run_result(const RunResult& result);

/// Throws ParseError on malformed documents, unknown keys, or a scenario echo
/// whose hash does not match the recorded one.
RunResult parse_run_result(std::string_view text);
RunResult load_run_result(const std::filesystem::path& path);
void save_run_result(const RunResult& result, const std::filesystem::path& path);

milp::MilpStatus parse_status(std::string_view name);

}  // namespace ohres
