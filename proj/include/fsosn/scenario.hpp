#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "fsosn/constellation.hpp"
#include "fsosn/geo.hpp"
#include "fsosn/link_budget.hpp"
#include "fsosn/metrics.hpp"
#include "fsosn/sweep.hpp"
#include "fsosn/turbulence.hpp"

namespace fsosn {

inline constexpr int kScenarioSchemaVersion = 1;

class ScenarioError : public std::runtime_error {
 public:
  enum class Kind { parse, validation };
  ScenarioError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

struct NamedPoint {
  std::string name;  // gazetteer key, empty for ad-hoc coordinates
  GeoPoint point;

  friend bool operator==(const NamedPoint&, const NamedPoint&) = default;
};

struct Scenario {
  int schema_version = kScenarioSchemaVersion;
  std::string constellation_name;  // preset key, empty for explicit parameters
  WalkerParams constellation;
  NamedPoint source;
  NamedPoint destination;
  std::vector<double> lisl_ranges_km;
  WeatherProfile weather;
  LinkBudgetParams link_budget;
  double node_ms = 10.0;
  int slot_count = 6000;
  double slot_seconds = 1.0;
  double min_elevation_deg = 25.0;
  TurbulenceParams turbulence;
  std::vector<double> op_snr_grid_db;
  double gamma_th_db = 7.0;
  std::vector<std::string> op_weathers;  // weather presets for the outage curves

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

std::optional<GeoPoint> city(std::string_view name);
std::vector<std::string> city_names();

std::vector<double> default_lisl_ranges(const WalkerParams& w);
double default_min_elevation(const WalkerParams& w);
std::vector<double> snr_grid(double start_db, double stop_db, double step_db);

/// Fills every omitted field with its default. Throws ScenarioError.
Scenario scenario_from_json(const nlohmann::json& j);
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::filesystem::path& path);

/// Throws ScenarioError(validation) naming the violated invariant.
void validate(const Scenario& s);

/// Fully explicit form; scenario_from_json(scenario_to_json(s)) == s.
nlohmann::json scenario_to_json(const Scenario& s);

/// FNV-1a 64 over the compact explicit JSON, as 16 hex digits.
std::string scenario_digest(const Scenario& s);

struct OutageCurve {
  std::string weather;
  Direction direction{};
  double atm_loss{};
  std::vector<double> snr_db;
  std::vector<double> p_out;
};

/// Outage probability over an SNR grid for one weather and direction. The link elevation is
/// 90 degrees minus the turbulence zenith angle.
OutageCurve outage_curve(const TurbulenceParams& t, const EWFadingParams& fading,
                         const WeatherProfile& w, Direction dir, std::span<const double> snr_db,
                         double gamma_th_db);

struct RunResult {
  std::string digest;
  SweepResult sweep;
  std::optional<Intersection> intersection;
  EWFadingParams fading;
  std::vector<OutageCurve> outage;
};

/// Thread count from FSOSN_THREADS (0 or unset = auto).
int threads_from_env();

SweepConfig sweep_config(const Scenario& s);

RunResult run(const Scenario& s, const std::function<void(int, int)>& progress = {});

/// 6 significant digits, as used in every output file.
std::string format_number(double v);

/// Writes tradeoff.csv, slots_<range>.csv, outage_<weather>_<direction>.csv, summary.json and
/// scenario.json into `dir` (created if missing).
void export_results(const Scenario& s, const RunResult& r, const std::filesystem::path& dir);

}  // namespace fsosn
