#include "bess/horizon/horizon.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "bess/degradation/life_loss.hpp"

namespace bess::horizon {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string dump_input(const tracking::HorizonInput& in) {
  std::ostringstream out;
  out.precision(17);
  out << "soc_init=" << in.soc_init << "\nstep,p_sch,p_wind_f,c_e\n";
  for (std::size_t k = 0; k < in.p_sch.size(); ++k) {
    out << k << ',' << in.p_sch[k] << ',' << in.p_wind_f[k] << ',' << in.c_e[k] << '\n';
  }
  return out.str();
}

tracking::HorizonInput slice(const SeriesData& data, std::size_t t, std::size_t n, double soc) {
  tracking::HorizonInput in;
  in.soc_init = soc;
  const auto b = static_cast<std::ptrdiff_t>(t);
  const auto e = static_cast<std::ptrdiff_t>(t + n);
  in.p_sch.assign(data.p_sch.begin() + b, data.p_sch.begin() + e);
  in.p_wind_f.assign(data.p_wind_f.begin() + b, data.p_wind_f.begin() + e);
  in.c_e.assign(data.c_e.begin() + b, data.c_e.begin() + e);
  return in;
}

void check_inputs(const SimulationConfig& config, const SeriesData& data, std::size_t window,
                  const degradation::BatteryParams& battery) {
  if (config.steps < 1) throw std::invalid_argument("simulation: steps must be >= 1");
  if (config.soc_initial < battery.soc_min || config.soc_initial > battery.soc_max) {
    throw std::invalid_argument("simulation: soc_initial outside [soc_min, soc_max]");
  }
  const std::size_t need = config.start + config.steps + window - 1;
  const std::size_t n = data.p_sch.size();
  if (data.p_wind_f.size() != n || data.c_e.size() != n) {
    throw std::invalid_argument("simulation: series lengths differ");
  }
  if (!data.p_wind_actual.empty() && data.p_wind_actual.size() != n) {
    throw std::invalid_argument("simulation: realized wind series length differs");
  }
  if (!data.timestamps.empty() && data.timestamps.size() != n) {
    throw std::invalid_argument("simulation: timestamp count differs from series length");
  }
  if (n < need) {
    std::ostringstream msg;
    msg << "simulation: series has " << n << " values, need " << need << " (start "
        << config.start << " + " << config.steps << " steps + " << window - 1
        << " lookahead)";
    throw std::invalid_argument(msg.str());
  }
}

}  // namespace

double update_soc(double s_prev, double p_dis, double p_ch,
                  const degradation::BatteryParams& battery, double dt_h, double tol) {
  const double s = s_prev - battery.eta_dis * p_dis * dt_h / battery.c_rated +
                   battery.eta_ch * p_ch * dt_h / battery.c_rated;
  if (s < battery.soc_min - tol || s > battery.soc_max + tol) {
    std::ostringstream msg;
    msg << "SOC update leaves bounds: " << s_prev << " -> " << s << " (p_dis " << p_dis
        << ", p_ch " << p_ch << ")";
    throw std::range_error(msg.str());
  }
  return std::clamp(s, battery.soc_min, battery.soc_max);
}

Totals summarize(std::span<const StepRecord> records, double dt_h) {
  if (records.empty()) throw std::invalid_argument("summarize: no records");
  Totals t;
  for (const auto& r : records) {
    t.bess_cost += r.bess_cost;
    t.penalty += r.penalty;
    t.throughput_mwh += (r.p_dis + r.p_ch) * dt_h;
    t.out_of_limit_mwh += (r.out_lower + r.out_upper) * dt_h;
  }
  t.total_cost = t.bess_cost + t.penalty;
  return t;
}

double dominance_tolerance(double value, const milp::SolveOptions& options) {
  return std::max(options.absolute_gap, options.relative_gap * std::abs(value)) +
         1e-7 * (1.0 + std::abs(value));
}

SimulationReport run_receding_horizon(const SimulationConfig& config, const SeriesData& data,
                                      const tracking::TrackingParams& params,
                                      const degradation::BatteryParams& battery,
                                      const degradation::CycleLifeCurve& curve,
                                      milp::SolverBackend& backend,
                                      const milp::SolveOptions& options) {
  params.validate();
  battery.validate();
  const auto window = static_cast<std::size_t>(params.steps());
  check_inputs(config, data, window, battery);

  tracking::TrackingParams run_params = params;
  run_params.mode = config.mode;
  tracking::TrackingParams shadow_params = params;
  shadow_params.mode = tracking::Objective::Case2;
  tracking::TrackingParams case1_params = params;
  case1_params.mode = tracking::Objective::Case1;
  const bool shadow = config.shadow_case2 && config.mode == tracking::Objective::Case1;

  SimulationReport rep;
  rep.mode = config.mode;
  rep.soc_initial = config.soc_initial;
  rep.dt_h = params.dt_h;
  const auto t_run = Clock::now();
  double soc = config.soc_initial;

  for (std::size_t k = 0; k < config.steps; ++k) {
    const std::size_t t = config.start + k;
    const tracking::HorizonInput in = slice(data, t, window, soc);

    SolveRecord sr;
    sr.index = t;
    tracking::HorizonSolution sol;
    const auto t0 = Clock::now();
    try {
      sol = tracking::solve_horizon(run_params, battery, curve, in, backend, options);
    } catch (const tracking::InfeasibleError& e) {
      throw HorizonAbort(t, "window at step " + std::to_string(t) + ": " + e.what(), dump_input(in))
          .mark_infeasible();
    } catch (const tracking::SolverLimitError& e) {
      throw HorizonAbort(t, "window at step " + std::to_string(t) + ": " + e.what(),
                         dump_input(in));
    }
    sr.wall_s = seconds_since(t0);
    sr.objective = sol.objective;
    sr.gap = sol.gap;
    sr.nodes = sol.nodes;
    sr.suboptimal = sol.suboptimal;

    if (shadow) {
      const auto s2 = tracking::solve_horizon(shadow_params, battery, curve, in, backend, options);
      sr.case2_objective = s2.objective;
      sr.case2_under_case1 =
          tracking::evaluate_solution_cost(s2, battery, in.c_e, case1_params).total_model;
    }
    rep.solves.push_back(sr);

    // Apply the first step only.
    const tracking::StepResult& first = sol.steps.front();
    StepRecord r;
    r.index = t;
    if (!data.timestamps.empty()) r.timestamp = data.timestamps[t];
    r.p_sch = data.p_sch[t];
    r.p_wind = data.p_wind_actual.empty() ? data.p_wind_f[t] : data.p_wind_actual[t];
    r.p_dis = first.p_dis;
    r.p_ch = first.p_ch;
    r.p_joint = r.p_wind + r.p_dis - r.p_ch;
    r.band_lower = (1.0 - params.lambda_lower) * r.p_sch;
    r.band_upper = (1.0 + params.lambda_upper) * r.p_sch;
    r.out_lower = tracking::out_of_limit_lower(params, r.p_sch, r.p_joint);
    r.out_upper = tracking::out_of_limit_upper(params, r.p_sch, r.p_joint);

    const double eta = r.p_ch > 0.0 ? battery.eta_ch : battery.eta_dis;
    r.unit_loss_price = battery.c_bess * degradation::loss_coefficient(curve, battery, soc) * eta;
    r.penalty_price = params.gamma_lower * data.c_e[t];

    const double next = update_soc(soc, r.p_dis, r.p_ch, battery, params.dt_h);
    r.soc = next;
    r.loss_exact = degradation::step_loss_exact(curve, soc, next);
    r.loss_model = first.loss_model;
    r.bess_cost = battery.c_bess * r.loss_exact;
    r.penalty = data.c_e[t] * params.dt_h *
                (params.gamma_lower * r.out_lower + params.gamma_upper * r.out_upper);
    r.step_cost = r.bess_cost + r.penalty;
    rep.bess_cost_model += battery.c_bess * r.loss_model;
    rep.records.push_back(r);
    soc = next;
  }

  rep.totals = summarize(rep.records, params.dt_h);
  rep.wall_s = seconds_since(t_run);
  return rep;
}

bool CasePair::dominance_holds() const {
  return std::all_of(dominance.begin(), dominance.end(),
                     [](const DominanceCheck& d) { return d.holds; });
}

CasePair run_case_pair(SimulationConfig config, const SeriesData& data,
                       tracking::TrackingParams params, const degradation::BatteryParams& battery,
                       const degradation::CycleLifeCurve& curve, milp::SolverBackend& backend,
                       const milp::SolveOptions& options) {
  CasePair pair;
  config.mode = tracking::Objective::Case1;
  config.shadow_case2 = true;
  params.mode = tracking::Objective::Case1;
  pair.case1 = run_receding_horizon(config, data, params, battery, curve, backend, options);
  for (const auto& s : pair.case1.solves) {
    DominanceCheck d;
    d.index = s.index;
    d.case1_objective = s.objective;
    d.case2_under_case1 = s.case2_under_case1.value_or(0.0);
    d.holds = s.case2_under_case1.has_value() &&
              d.case1_objective <= d.case2_under_case1 +
                                       dominance_tolerance(d.case2_under_case1, options);
    pair.dominance.push_back(d);
  }
  config.mode = tracking::Objective::Case2;
  config.shadow_case2 = false;
  params.mode = tracking::Objective::Case2;
  pair.case2 = run_receding_horizon(config, data, params, battery, curve, backend, options);
  return pair;
}

}  // namespace bess::horizon
