#pragma once
// Run configuration: one JSON file with sections battery, curve, tracking,
// simulation, solver and data. docs/config.md lists every key. Missing keys
// keep their defaults; unknown keys are rejected so typos surface early.

#include <array>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include "bess/degradation/curve.hpp"
#include "bess/horizon/horizon.hpp"
#include "bess/milp/solver.hpp"
#include "bess/tracking/tracking.hpp"

namespace bess::io {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CurveSpec {
  std::string family = "biexp";  // "biexp" or "poly4"
  std::array<double, 5> a{};
  double b1 = 49660.0;
  double c1 = -14.32;
  double b2 = 34280.0;
  double c2 = -2.181;
};

struct DataPaths {
  std::filesystem::path p_sch;
  std::filesystem::path p_wind_f;
  std::filesystem::path c_e;
  std::filesystem::path p_wind_actual;  // empty: settle on the forecast
};

struct RunConfig {
  std::string currency = "currency units";
  degradation::BatteryParams battery;
  CurveSpec curve;
  tracking::TrackingParams tracking;
  horizon::SimulationConfig simulation;
  milp::SolveOptions solve;
  std::string backend = "reference";
  std::optional<DataPaths> data;

  // Throws ConfigError.
  degradation::CycleLifeCurve make_curve() const;
  // Every violated invariant raises ConfigError with its own message.
  void validate() const;
};

// Paths in the data section are resolved against base_dir.
RunConfig parse_config(const std::string& text, const std::filesystem::path& base_dir = {});
RunConfig load_config(const std::filesystem::path& path);
std::string default_config_text();

// Loads the data series and checks them against the config: step equals dt,
// equal start times and lengths, and at least steps + H/dt points from start.
horizon::SeriesData load_series(const RunConfig& config);
void check_series(const RunConfig& config, const horizon::SeriesData& data, int step_minutes);

}  // namespace bess::io
