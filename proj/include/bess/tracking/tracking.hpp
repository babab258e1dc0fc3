#pragma once
// One receding-horizon window of the wind + storage schedule-tracking MILP.
//
// Per step t the model holds discharge/charge power with mode binaries, the
// SOC recursion, out-of-limit slack against the tolerance band around the
// schedule, a PWL block for the primitive F at S(t) and an epigraph variable
// L(t) >= |f_t - f_{t-1}|. L is carried in currency (scaled by C_BESS) so the
// objective has unit coefficients on it. Case2 drops the loss term; its model
// omits the PWL blocks since nothing in the objective depends on them.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bess/degradation/curve.hpp"
#include "bess/milp/model.hpp"
#include "bess/milp/solver.hpp"
#include "bess/pwl/pwl.hpp"

namespace bess::tracking {

enum class Objective { Case1, Case2 };

struct TrackingParams {
  double lambda_lower = 0.05;
  double lambda_upper = 0.05;
  double gamma_lower = 1.0;
  double gamma_upper = 1.0;
  int n_seg = 10;
  double horizon_h = 2.0;
  double dt_h = 0.25;
  Objective mode = Objective::Case1;
  std::optional<double> big_m;
  std::optional<double> eps_plus;

  // Number of steps H / dt. Throws std::invalid_argument if not a positive integer.
  int steps() const;
  void validate() const;
};

struct HorizonInput {
  double soc_init = 0.5;
  std::vector<double> p_sch;     // MW
  std::vector<double> p_wind_f;  // MW
  std::vector<double> c_e;       // currency / MWh
};

struct StepVars {
  milp::VarId p_dis, p_ch, v_dis, v_ch, soc, out_lower, out_upper;
  std::optional<milp::VarId> loss;  // Case1 only
  std::optional<pwl::PwlBlock> block;
};

struct HorizonModel {
  milp::Model model;
  pwl::PwlExpansion expansion;
  double f_init = 0.0;  // interpolant at soc_init
  std::vector<StepVars> steps;
};

// Throws std::invalid_argument on dimension mismatch, negative prices or an
// invalid parameter set.
HorizonModel build_horizon_model(const TrackingParams& params,
                                 const degradation::BatteryParams& battery,
                                 const degradation::CycleLifeCurve& curve,
                                 const HorizonInput& input);

struct StepResult {
  bool v_dis = false;
  bool v_ch = false;
  double p_dis = 0.0;
  double p_ch = 0.0;
  double p_joint = 0.0;
  double soc = 0.0;
  double out_lower = 0.0;   // recomputed from p_joint
  double out_upper = 0.0;
  double loss_model = 0.0;  // |f_t - f_{t-1}| of the PWL, life fraction
  double loss_exact = 0.0;  // |F(S_t) - F(S_{t-1})|
  std::vector<double> segments;  // PWL segment values, Case1 only
  std::vector<double> binaries;
};

struct HorizonSolution {
  std::vector<StepResult> steps;
  double objective = 0.0;  // solver objective of the mode that was solved
  double bess_cost = 0.0;  // C_BESS * sum loss_model
  double penalty = 0.0;
  double gap = 0.0;
  bool suboptimal = false;
  std::int64_t nodes = 0;
  std::string diagnostic;
};

class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SolverLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Throws InfeasibleError naming the first violated bound scenario and
// SolverLimitError if a limit hits before any incumbent exists. A limit with
// an incumbent returns it with suboptimal = true.
HorizonSolution solve_horizon(const TrackingParams& params,
                              const degradation::BatteryParams& battery,
                              const degradation::CycleLifeCurve& curve, const HorizonInput& input,
                              milp::SolverBackend& backend, const milp::SolveOptions& options = {});

struct CostBreakdown {
  double bess_model = 0.0;
  double bess_exact = 0.0;
  double penalty = 0.0;
  double total_model = 0.0;
  double total_exact = 0.0;
};

CostBreakdown evaluate_solution_cost(const HorizonSolution& solution,
                                     const degradation::BatteryParams& battery,
                                     const std::vector<double>& c_e, const TrackingParams& params);

// Out-of-limit power for a joint output against the tolerance band.
double out_of_limit_lower(const TrackingParams& params, double p_sch, double p_joint);
double out_of_limit_upper(const TrackingParams& params, double p_sch, double p_joint);

}  // namespace bess::tracking
