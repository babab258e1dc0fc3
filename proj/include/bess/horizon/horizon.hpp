#pragma once
// Receding-horizon driver: solve the window starting at t_i, apply only its
// first step, advance the SOC, settle that step's cost, shift by one step.

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "bess/degradation/curve.hpp"
#include "bess/milp/solver.hpp"
#include "bess/tracking/tracking.hpp"

namespace bess::horizon {

struct SimulationConfig {
  std::size_t start = 0;
  std::size_t steps = 96;
  double soc_initial = 0.5;
  tracking::Objective mode = tracking::Objective::Case1;
  // Case1 only: also solve Case2 at every state to check dominance.
  bool shadow_case2 = false;
};

struct SeriesData {
  std::vector<std::string> timestamps;  // optional labels, same length as the series
  std::vector<double> p_sch;
  std::vector<double> p_wind_f;
  std::vector<double> c_e;
  // Realized wind for settlement; the forecast is used when empty.
  std::vector<double> p_wind_actual;
};

struct StepRecord {
  std::size_t index = 0;
  std::string timestamp;
  double p_sch = 0.0;
  double p_wind = 0.0;
  double p_dis = 0.0;
  double p_ch = 0.0;
  double p_joint = 0.0;
  double soc = 0.0;  // after the step
  double band_lower = 0.0;
  double band_upper = 0.0;
  double out_lower = 0.0;
  double out_upper = 0.0;
  double loss_exact = 0.0;
  double loss_model = 0.0;
  double bess_cost = 0.0;  // C_BESS * loss_exact
  double penalty = 0.0;
  double step_cost = 0.0;  // bess_cost + penalty
  // Plot diagnostics: currency per MWh of terminal energy moved at the
  // pre-step SOC (loss coefficient times C_BESS times the efficiency of the
  // applied direction, discharge when idle), and gamma * C_E.
  double unit_loss_price = 0.0;
  double penalty_price = 0.0;
};

struct SolveRecord {
  std::size_t index = 0;
  double objective = 0.0;
  double gap = 0.0;
  double wall_s = 0.0;
  std::int64_t nodes = 0;
  bool suboptimal = false;
  // Shadow Case2 solution priced with the Case1 objective; set when requested.
  std::optional<double> case2_under_case1;
  std::optional<double> case2_objective;
};

struct Totals {
  double total_cost = 0.0;
  double bess_cost = 0.0;
  double penalty = 0.0;
  double throughput_mwh = 0.0;
  double out_of_limit_mwh = 0.0;
};

struct SimulationReport {
  tracking::Objective mode = tracking::Objective::Case1;
  double soc_initial = 0.0;
  double dt_h = 0.25;
  std::vector<StepRecord> records;
  std::vector<SolveRecord> solves;
  Totals totals;
  double bess_cost_model = 0.0;  // PWL-based life-loss cost of the applied steps
  double wall_s = 0.0;
};

// Thrown when a window cannot be solved. Carries the offending start index
// and a text dump of the sliced input.
class HorizonAbort : public std::runtime_error {
 public:
  HorizonAbort(std::size_t index, const std::string& what, std::string dump)
      : std::runtime_error(what), index_(index), dump_(std::move(dump)) {}
  std::size_t index() const { return index_; }
  const std::string& dump() const { return dump_; }
  bool infeasible() const { return infeasible_; }
  HorizonAbort& mark_infeasible() {
    infeasible_ = true;
    return *this;
  }

 private:
  std::size_t index_;
  std::string dump_;
  bool infeasible_ = false;
};

// SOC after one step. Results within tol outside [soc_min, soc_max] are
// clamped onto the bound; further out throws std::range_error.
double update_soc(double s_prev, double p_dis, double p_ch,
                  const degradation::BatteryParams& battery, double dt_h, double tol = 1e-6);

// Totals over the records. Throws std::invalid_argument when empty.
Totals summarize(std::span<const StepRecord> records, double dt_h);

// Throws std::invalid_argument when the series do not cover
// [start, start + steps + H/dt - 1] or config values are out of range.
SimulationReport run_receding_horizon(const SimulationConfig& config, const SeriesData& data,
                                      const tracking::TrackingParams& params,
                                      const degradation::BatteryParams& battery,
                                      const degradation::CycleLifeCurve& curve,
                                      milp::SolverBackend& backend,
                                      const milp::SolveOptions& options = {});

struct DominanceCheck {
  std::size_t index = 0;
  double case1_objective = 0.0;
  double case2_under_case1 = 0.0;
  bool holds = false;
};

struct CasePair {
  SimulationReport case1;
  SimulationReport case2;
  std::vector<DominanceCheck> dominance;
  bool dominance_holds() const;
};

// Case1 run with shadow Case2 solves, then an independent Case2 run.
CasePair run_case_pair(SimulationConfig config, const SeriesData& data,
                       tracking::TrackingParams params, const degradation::BatteryParams& battery,
                       const degradation::CycleLifeCurve& curve, milp::SolverBackend& backend,
                       const milp::SolveOptions& options = {});

// Slack allowed in the dominance comparison: the solver's gap tolerance plus
// a relative rounding margin.
double dominance_tolerance(double value, const milp::SolveOptions& options);

}  // namespace bess::horizon
