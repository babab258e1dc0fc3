#include "bess/tracking/tracking.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bess/degradation/life_loss.hpp"

namespace bess::tracking {

using milp::LinearExpr;
using milp::Sense;
using milp::VarType;

int TrackingParams::steps() const {
  if (!(dt_h > 0.0) || !(horizon_h > 0.0)) {
    throw std::invalid_argument("tracking: horizon and step must be positive");
  }
  const double ratio = horizon_h / dt_h;
  const double n = std::round(ratio);
  if (n < 1.0 || std::abs(ratio - n) > 1e-9 * std::max(1.0, ratio)) {
    std::ostringstream msg;
    msg << "tracking: horizon " << horizon_h << " h is not a whole number of " << dt_h
        << " h steps";
    throw std::invalid_argument(msg.str());
  }
  return static_cast<int>(n);
}

void TrackingParams::validate() const {
  steps();
  if (!(lambda_lower >= 0.0) || !(lambda_upper >= 0.0)) {
    throw std::invalid_argument("tracking: tolerance rates must be >= 0");
  }
  if (!(gamma_lower >= 0.0) || !(gamma_upper >= 0.0)) {
    throw std::invalid_argument("tracking: penalty coefficients must be >= 0");
  }
  if (n_seg < 1) throw std::invalid_argument("tracking: n_seg must be >= 1");
}

double out_of_limit_lower(const TrackingParams& params, double p_sch, double p_joint) {
  return std::max(0.0, (1.0 - params.lambda_lower) * p_sch - p_joint);
}

double out_of_limit_upper(const TrackingParams& params, double p_sch, double p_joint) {
  return std::max(0.0, p_joint - (1.0 + params.lambda_upper) * p_sch);
}

HorizonModel build_horizon_model(const TrackingParams& params,
                                 const degradation::BatteryParams& battery,
                                 const degradation::CycleLifeCurve& curve,
                                 const HorizonInput& input) {
  params.validate();
  battery.validate();
  const auto n = static_cast<std::size_t>(params.steps());
  if (input.p_sch.size() != n || input.p_wind_f.size() != n || input.c_e.size() != n) {
    std::ostringstream msg;
    msg << "horizon input: series lengths " << input.p_sch.size() << "/" << input.p_wind_f.size()
        << "/" << input.c_e.size() << " do not match " << n << " steps";
    throw std::invalid_argument(msg.str());
  }
  for (std::size_t t = 0; t < n; ++t) {
    if (!(input.c_e[t] >= 0.0)) throw std::invalid_argument("horizon input: negative price");
  }

  HorizonModel hm;
  const bool case1 = params.mode == Objective::Case1;
  hm.expansion = pwl::build_expansion(
      [&curve](double s) { return degradation::primitive(curve, s); }, battery.soc_min,
      battery.soc_max, params.n_seg, params.big_m, params.eps_plus);
  if (input.soc_init >= battery.soc_min && input.soc_init <= battery.soc_max) {
    hm.f_init = pwl::eval_interpolant(hm.expansion, input.soc_init);
  }

  auto& m = hm.model;
  const double dt = params.dt_h;
  const double k_dis = battery.eta_dis * dt / battery.c_rated;
  const double k_ch = battery.eta_ch * dt / battery.c_rated;
  LinearExpr objective;
  LinearExpr f_prev(battery.c_bess * hm.f_init);

  for (std::size_t t = 0; t < n; ++t) {
    const std::string s = std::to_string(t);
    StepVars v{};
    v.p_dis = m.add_variable(0.0, battery.p_dis_max, VarType::Continuous, "p_dis_" + s);
    v.p_ch = m.add_variable(0.0, battery.p_ch_max, VarType::Continuous, "p_ch_" + s);
    v.v_dis = m.add_binary("v_dis_" + s);
    v.v_ch = m.add_binary("v_ch_" + s);
    v.soc = m.add_variable(battery.soc_min, battery.soc_max, VarType::Continuous, "soc_" + s);
    v.out_lower = m.add_variable(0.0, milp::kInf, VarType::Continuous, "out_lo_" + s);
    v.out_upper = m.add_variable(0.0, milp::kInf, VarType::Continuous, "out_up_" + s);

    m.add_constraint(v.p_dis - battery.p_dis_max * v.v_dis, Sense::LessEqual, 0.0, "dis_mode_" + s);
    m.add_constraint(v.p_ch - battery.p_ch_max * v.v_ch, Sense::LessEqual, 0.0, "ch_mode_" + s);
    m.add_constraint(v.v_dis + v.v_ch, Sense::LessEqual, 1.0, "one_mode_" + s);

    LinearExpr soc_row = LinearExpr(v.soc) + k_dis * v.p_dis - k_ch * v.p_ch;
    if (t == 0) {
      m.add_constraint(soc_row, Sense::Equal, input.soc_init, "soc_" + s);
    } else {
      soc_row.add(hm.steps[t - 1].soc, -1.0);
      m.add_constraint(soc_row, Sense::Equal, 0.0, "soc_" + s);
    }

    // Joint output = wind + p_dis - p_ch.
    const double wind = input.p_wind_f[t];
    const double sch = input.p_sch[t];
    m.add_constraint(v.p_dis - v.p_ch + v.out_lower, Sense::GreaterEqual,
                     (1.0 - params.lambda_lower) * sch - wind, "band_lo_" + s);
    m.add_constraint(v.p_dis - v.p_ch - v.out_upper, Sense::LessEqual,
                     (1.0 + params.lambda_upper) * sch - wind, "band_up_" + s);

    const double w = input.c_e[t] * dt;
    objective.add(v.out_lower, params.gamma_lower * w);
    objective.add(v.out_upper, params.gamma_upper * w);

    if (case1) {
      v.block = pwl::emit_constraints(hm.expansion, m, v.soc, "pwl_" + s);
      v.loss = m.add_variable(0.0, milp::kInf, VarType::Continuous, "loss_" + s);
      const LinearExpr f = v.block->f * battery.c_bess;
      m.add_constraint(LinearExpr(*v.loss) - f + f_prev, Sense::GreaterEqual, 0.0, "loss_up_" + s);
      m.add_constraint(LinearExpr(*v.loss) + f - f_prev, Sense::GreaterEqual, 0.0, "loss_dn_" + s);
      objective.add(*v.loss, 1.0);
      f_prev = f;
    }
    hm.steps.push_back(std::move(v));
  }
  m.set_objective(objective);
  return hm;
}

namespace {

double value(const milp::MilpSolution& s, milp::VarId v) {
  return s.values[static_cast<std::size_t>(v.value)];
}

}  // namespace

HorizonSolution solve_horizon(const TrackingParams& params,
                              const degradation::BatteryParams& battery,
                              const degradation::CycleLifeCurve& curve, const HorizonInput& input,
                              milp::SolverBackend& backend, const milp::SolveOptions& options) {
  battery.validate();
  if (input.soc_init < battery.soc_min || input.soc_init > battery.soc_max) {
    std::ostringstream msg;
    msg << "horizon infeasible: initial SOC " << input.soc_init
        << (input.soc_init < battery.soc_min ? " below soc_min " : " above soc_max ")
        << (input.soc_init < battery.soc_min ? battery.soc_min : battery.soc_max);
    throw InfeasibleError(msg.str());
  }
  const HorizonModel hm = build_horizon_model(params, battery, curve, input);
  const milp::MilpSolution sol = backend.solve(hm.model, options);

  switch (sol.status) {
    case milp::SolveStatus::Optimal:
      break;
    case milp::SolveStatus::Infeasible:
      throw InfeasibleError("horizon infeasible: solver found no point satisfying the SOC, power "
                            "and mode constraints together");
    case milp::SolveStatus::Unbounded:
      throw InfeasibleError("horizon model reported unbounded; check prices and penalties");
    case milp::SolveStatus::LimitReached:
      if (!sol.has_solution()) {
        throw SolverLimitError("horizon solve hit a limit without an incumbent: " + sol.diagnostic);
      }
      break;
  }

  HorizonSolution out;
  out.objective = sol.objective;
  out.gap = sol.gap;
  out.nodes = sol.nodes;
  out.suboptimal = sol.status == milp::SolveStatus::LimitReached;
  out.diagnostic = sol.diagnostic;

  double soc_prev = input.soc_init;
  double f_prev = hm.f_init;
  for (std::size_t t = 0; t < hm.steps.size(); ++t) {
    const StepVars& v = hm.steps[t];
    StepResult r;
    r.v_dis = value(sol, v.v_dis) > 0.5;
    r.v_ch = value(sol, v.v_ch) > 0.5;
    r.p_dis = r.v_dis ? std::clamp(value(sol, v.p_dis), 0.0, battery.p_dis_max) : 0.0;
    r.p_ch = r.v_ch ? std::clamp(value(sol, v.p_ch), 0.0, battery.p_ch_max) : 0.0;
    r.p_joint = input.p_wind_f[t] + r.p_dis - r.p_ch;
    r.soc = std::clamp(value(sol, v.soc), battery.soc_min, battery.soc_max);
    r.out_lower = out_of_limit_lower(params, input.p_sch[t], r.p_joint);
    r.out_upper = out_of_limit_upper(params, input.p_sch[t], r.p_joint);

    double f = 0.0;
    if (v.block) {
      f = v.block->f.evaluate(sol.values);
      for (auto d : v.block->segments) r.segments.push_back(value(sol, d));
      for (auto x : v.block->binaries) r.binaries.push_back(value(sol, x) > 0.5 ? 1.0 : 0.0);
    } else {
      f = pwl::eval_interpolant(hm.expansion, r.soc);
    }
    r.loss_model = std::abs(f - f_prev);
    r.loss_exact = degradation::step_loss_exact(curve, soc_prev, r.soc);
    f_prev = f;
    soc_prev = r.soc;
    out.steps.push_back(std::move(r));
  }

  const CostBreakdown c = evaluate_solution_cost(out, battery, input.c_e, params);
  out.bess_cost = c.bess_model;
  out.penalty = c.penalty;
  return out;
}

CostBreakdown evaluate_solution_cost(const HorizonSolution& solution,
                                     const degradation::BatteryParams& battery,
                                     const std::vector<double>& c_e, const TrackingParams& params) {
  if (c_e.size() < solution.steps.size()) {
    throw std::invalid_argument("cost evaluation: price series shorter than the solution");
  }
  CostBreakdown c;
  double loss_model = 0.0;
  double loss_exact = 0.0;
  for (std::size_t t = 0; t < solution.steps.size(); ++t) {
    const StepResult& r = solution.steps[t];
    loss_model += r.loss_model;
    loss_exact += r.loss_exact;
    c.penalty += c_e[t] * params.dt_h *
                 (params.gamma_lower * r.out_lower + params.gamma_upper * r.out_upper);
  }
  c.bess_model = battery.c_bess * loss_model;
  c.bess_exact = battery.c_bess * loss_exact;
  c.total_model = c.bess_model + c.penalty;
  c.total_exact = c.bess_exact + c.penalty;
  return c;
}

}  // namespace bess::tracking
