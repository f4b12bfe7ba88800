#pragma once

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ohres {

/// Number of hourly intervals in a planning day.
inline constexpr std::size_t kIntervalsPerDay = 24;

/// Raised when a scenario document cannot be parsed.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a scenario violates one of its invariants. The message names
/// the offending field.
class ValidationError : public std::runtime_error {
 public:
  ValidationError(std::string field, const std::string& what)
      : std::runtime_error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

// Units: money in M$, power in MW, energy in MWh, hydrogen mass in kg.
struct CostParameters {
  double wt_capital = 0.0;           // per turbine unit
  double bess_capital = 0.0;         // per MWh
  double el_capital = 0.0;           // per MW
  double fc_capital = 0.0;           // per MW
  double comp_capital = 0.0;         // per MW (compressor sized by electrolyzer)
  double cav_capital_per_mwh = 0.0;  // per MWh of hydrogen energy capacity
  double wt_om = 0.0;                // per turbine per year
  double bess_om = 0.0;              // per MWh per year
  double el_om = 0.0;                // per MW per year, compressor folded in
  double fc_om = 0.0;                // per MW per year
  double cav_om = 0.0;               // per MWh-capacity per year

  bool operator==(const CostParameters&) const = default;
};

struct EfficiencyParameters {
  double eta_char = 1.0;
  double eta_disc = 1.0;
  double eta_el = 1.0;
  double eta_fc = 1.0;
  double eps_h = 1.0;  // MWh per kg of hydrogen

  bool operator==(const EfficiencyParameters&) const = default;
};

/// Hourly power values in MW.
struct TimeSeriesProfile {
  std::vector<double> values;

  std::size_t size() const noexcept { return values.size(); }
  double operator[](std::size_t t) const { return values[t]; }
  double max() const;

  bool operator==(const TimeSeriesProfile&) const = default;
};

enum class ResilienceMode { Basic, HessOnly, BessOnly, Joint };

/// Parses the short names used in files and on the command line
/// (basic, hess, bess, joint). Throws ParseError on anything else.
ResilienceMode parse_mode(std::string_view name);
std::string_view mode_name(ResilienceMode mode);

struct ResilienceSpec {
  ResilienceMode mode = ResilienceMode::Basic;
  int tr_hours = 0;

  /// Resilience duration actually imposed; Basic ignores tr_hours.
  int effective_hours() const noexcept {
    return mode == ResilienceMode::Basic ? 0 : tr_hours;
  }

  bool operator==(const ResilienceSpec&) const = default;
};

struct ScenarioConfig {
  CostParameters costs;
  EfficiencyParameters efficiencies;
  TimeSeriesProfile load_profile;
  TimeSeriesProfile wind_unit_profile;  // available power of one turbine
  double wt_unit_rating = 0.0;
  double p_rig_rated = 0.0;
  double p_load_max = 0.0;
  int lifetime_years = 1;
  ResilienceSpec resilience;
  double bess_initial_frac = 0.5;
  double cav_initial_frac = 0.5;
  double big_m = 0.0;
  int wt_count_max = 1;
  double p_bess_min = 0.0;  // carried, not used by the formulation

  std::size_t intervals() const noexcept { return load_profile.size(); }
  /// Rated energy over the lifetime, MWh.
  double lifetime_energy() const noexcept {
    return p_rig_rated * 8760.0 * static_cast<double>(lifetime_years);
  }

  bool operator==(const ScenarioConfig&) const = default;
};

/// Checks every scenario invariant, throwing ValidationError on the first
/// violation. Profiles must have exactly `intervals` entries.
void validate(const ScenarioConfig& scenario,
              std::size_t intervals = kIntervalsPerDay);

/// The calibrated reference scenario (Gulf of Mexico 50 MW platform) with the
/// bundled synthetic profiles.
ScenarioConfig default_parameters();

/// Parses a scenario document and validates it.
ScenarioConfig parse_scenario(std::string_view text);
ScenarioConfig load_scenario(const std::filesystem::path& path);

/// Canonical JSON text of a scenario; parse_scenario(serialize_scenario(s)) == s.
std::string serialize_scenario(const ScenarioConfig& scenario);

/// Stable 64-bit FNV-1a digest of the canonical serialization, as hex.
std::string scenario_hash(const ScenarioConfig& scenario);

}  // namespace ohres
