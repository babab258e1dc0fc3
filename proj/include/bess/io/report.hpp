#pragma once
// Result files. A simulation writes <prefix>trajectory.csv (one row per
// applied step) and <prefix>totals.json (the five cost/energy indices plus
// diagnostics). A Case1/Case2 pair adds comparison.json with four cost rows
// per case. docs/report_schema.md documents the columns.

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "bess/degradation/fit.hpp"
#include "bess/horizon/horizon.hpp"
#include "bess/tracking/tracking.hpp"

namespace bess::io {

inline const std::vector<std::string>& trajectory_columns() {
  static const std::vector<std::string> cols{
      "timestamp",     "P_sch",        "P_wind_f",        "P_dis",      "P_ch",
      "P_joint",       "S_OC",         "P_out_lower",     "P_out_upper", "L_loss_exact",
      "step_cost",     "S_OC_prev",    "band_lower",      "band_upper", "L_loss_model",
      "bess_cost",     "penalty",      "unit_loss_price", "penalty_price"};
  return cols;
}

struct ReportFiles {
  std::filesystem::path trajectory_csv;
  std::filesystem::path totals_json;
};

// Throws std::runtime_error naming the path on I/O failure.
ReportFiles write_report(const horizon::SimulationReport& report,
                         const std::filesystem::path& out_dir, const std::string& prefix = "",
                         const std::string& currency = "currency units");
std::filesystem::path write_comparison(const horizon::CasePair& pair,
                                       const std::filesystem::path& out_dir,
                                       const std::string& currency = "currency units");

horizon::Totals read_totals(const std::filesystem::path& totals_json);

struct Trajectory {
  std::vector<std::string> timestamps;
  std::map<std::string, std::vector<double>> columns;
  std::size_t size() const { return timestamps.size(); }
  const std::vector<double>& at(const std::string& name) const;
};

// Reads a trajectory CSV written by write_report.
Trajectory read_trajectory(const std::filesystem::path& path);

// SOC trace from either a trajectory CSV (S_OC_prev of the first row, then
// S_OC of every row) or a 'timestamp,value' series.
std::vector<double> load_soc_trajectory(const std::filesystem::path& path);

// Cycle test samples, header 'dod,cycles'.
std::vector<degradation::CycleSample> load_cycle_samples(const std::filesystem::path& path);

// solve-one output: solution.json and solution.csv.
void write_horizon_solution(const tracking::HorizonSolution& sol,
                            const tracking::HorizonInput& input,
                            const tracking::CostBreakdown& cost,
                            const std::filesystem::path& out_dir);

}  // namespace bess::io
