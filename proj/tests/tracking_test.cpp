#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "bess/degradation/life_loss.hpp"
#include "bess/tracking/tracking.hpp"
#include "support/random_milp.hpp"

using namespace bess;
using tracking::HorizonInput;
using tracking::Objective;
using tracking::TrackingParams;

namespace {

const degradation::CycleLifeCurve kRef = degradation::CycleLifeCurve::lfp_reference();

// Piecewise-linear interpolation of F through n_seg + 1 uniform nodes,
// evaluated independently of the pwl module.
double interp_f(double s, const degradation::BatteryParams& b, int n_seg) {
  const double w = (b.soc_max - b.soc_min) / n_seg;
  int k = static_cast<int>(std::floor((s - b.soc_min) / w));
  k = std::clamp(k, 0, n_seg - 1);
  const double x0 = b.soc_min + k * w;
  const double x1 = k + 1 == n_seg ? b.soc_max : b.soc_min + (k + 1) * w;
  const double f0 = degradation::primitive(kRef, x0);
  const double f1 = degradation::primitive(kRef, x1);
  return f0 + (f1 - f0) * (s - x0) / (x1 - x0);
}

HorizonInput flat_input(int n, double sch, double wind, double price, double soc) {
  HorizonInput in;
  in.soc_init = soc;
  in.p_sch.assign(static_cast<std::size_t>(n), sch);
  in.p_wind_f.assign(static_cast<std::size_t>(n), wind);
  in.c_e.assign(static_cast<std::size_t>(n), price);
  return in;
}

HorizonInput random_input(std::mt19937_64& rng, int n) {
  HorizonInput in;
  in.soc_init = testing::uniform(rng, 0.2, 0.8);
  for (int t = 0; t < n; ++t) {
    const double sch = testing::uniform(rng, 30.0, 90.0);
    in.p_sch.push_back(sch);
    in.p_wind_f.push_back(sch * (1.0 + testing::uniform(rng, -0.15, 0.15)));
    in.c_e.push_back(testing::uniform(rng, 0.0, 1.0) < 0.5 ? 35.0 : 65.0);
  }
  return in;
}

TrackingParams one_step() {
  TrackingParams p;
  p.horizon_h = 0.25;
  p.dt_h = 0.25;
  return p;
}

}  // namespace

TEST_CASE("params: horizon must be a whole number of steps") {
  TrackingParams p;
  CHECK(p.steps() == 8);
  p.horizon_h = 1.1;
  CHECK_THROWS_AS(p.steps(), std::invalid_argument);
  p = TrackingParams{};
  p.gamma_lower = -1.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("model dimensions for an 8-step horizon") {
  for (int n_seg : {1, 4, 10}) {
    TrackingParams p;
    p.n_seg = n_seg;
    const auto hm =
        tracking::build_horizon_model(p, {}, kRef, flat_input(8, 50, 50, 40, 0.5));
    CHECK(hm.steps.size() == 8);
    int blocks = 0;
    for (const auto& s : hm.steps) blocks += s.block.has_value();
    CHECK(blocks == 8);
    CHECK(hm.model.num_binaries() == static_cast<std::size_t>(8 * (n_seg + 2)));
  }
}

TEST_CASE("mismatched series lengths are rejected") {
  auto in = flat_input(8, 50, 50, 40, 0.5);
  in.c_e.pop_back();
  CHECK_THROWS_AS(tracking::build_horizon_model({}, {}, kRef, in), std::invalid_argument);
}

TEST_CASE("zero deviation gives zero cost and an idle battery") {
  milp::ReferenceBackend be;
  for (Objective mode : {Objective::Case1, Objective::Case2}) {
    TrackingParams p;
    p.mode = mode;
    const auto sol = tracking::solve_horizon(p, {}, kRef, flat_input(8, 60, 60, 50, 0.5), be);
    CHECK(std::abs(sol.objective) <= 1e-9);
    if (mode == Objective::Case1) {
      for (const auto& s : sol.steps) {
        CHECK(s.p_dis == doctest::Approx(0.0));
        CHECK(s.p_ch == doctest::Approx(0.0));
        CHECK(s.soc == doctest::Approx(0.5));
      }
    }
  }
}

TEST_CASE("single step: discharge or pay, checked against a 0.01 MW grid") {
  const degradation::BatteryParams b;
  milp::ReferenceBackend be;
  for (double price : {50.0, 100.0}) {
    const TrackingParams p = one_step();
    const auto in = flat_input(1, 100.0, 90.0, price, 0.5);
    const double f0 = interp_f(0.5, b, p.n_seg);

    double best = 1e300, best_p = 0.0;
    for (int k = -1000; k <= 1000; ++k) {
      const double pw = k * 0.01;  // >0 discharge, <0 charge
      const double soc = 0.5 - (pw > 0 ? b.eta_dis * pw : b.eta_ch * pw) * p.dt_h / b.c_rated;
      const double joint = 90.0 + pw;
      const double pen = price * p.dt_h * std::max(0.0, 95.0 - joint);
      const double cost = b.c_bess * std::abs(interp_f(soc, b, p.n_seg) - f0) + pen;
      if (cost < best) {
        best = cost;
        best_p = pw;
      }
    }
    const auto sol = tracking::solve_horizon(p, b, kRef, in, be);
    const double applied = sol.steps[0].p_dis - sol.steps[0].p_ch;
    CAPTURE(price);
    MESSAGE("price " << price << ": grid optimum " << best << " at " << best_p << " MW, solver "
                     << sol.objective << " at " << applied << " MW");
    CHECK(sol.objective <= best + 1e-6);
    // The grid can only miss the true vertex by one grid cell.
    CHECK(sol.objective >= best - 0.01 * (price * p.dt_h + 20.0));
    CHECK(std::abs(applied - best_p) <= 0.01 + 1e-9);
  }
}

TEST_CASE("full battery with wind above the band pays the whole excess") {
  const degradation::BatteryParams b;
  milp::ReferenceBackend be;
  const auto in = flat_input(1, 100.0, 115.0, 60.0, b.soc_max);
  const auto sol = tracking::solve_horizon(one_step(), b, kRef, in, be);
  CHECK(sol.steps[0].p_ch == 0.0);
  CHECK(sol.steps[0].p_dis == 0.0);
  CHECK(sol.steps[0].out_upper == doctest::Approx(10.0));
  CHECK(sol.objective == doctest::Approx(10.0 * 60.0 * 0.25));
}

TEST_CASE("wind inside the tolerance band costs nothing") {
  milp::ReferenceBackend be;
  std::mt19937_64 rng(3);
  HorizonInput in;
  in.soc_init = 0.4;
  for (int t = 0; t < 8; ++t) {
    const double sch = testing::uniform(rng, 20.0, 80.0);
    in.p_sch.push_back(sch);
    in.p_wind_f.push_back(sch * (1.0 + testing::uniform(rng, -0.05, 0.05)));
    in.c_e.push_back(50.0);
  }
  const auto sol = tracking::solve_horizon({}, {}, kRef, in, be);
  CHECK(std::abs(sol.objective) <= 1e-9);
}

TEST_CASE("single segment model still solves") {
  TrackingParams p;
  p.n_seg = 1;
  milp::ReferenceBackend be;
  std::mt19937_64 rng(11);
  const auto sol = tracking::solve_horizon(p, {}, kRef, random_input(rng, 8), be);
  CHECK_FALSE(sol.suboptimal);
}

TEST_CASE("solutions respect modes, recursion, fill order and epigraph exactness") {
  const degradation::BatteryParams b;
  milp::ReferenceBackend be;
  std::mt19937_64 rng(2024);
  TrackingParams p;
  p.n_seg = 4;
  const auto probe = tracking::build_horizon_model(p, b, kRef, random_input(rng, 8));
  for (int k = 0; k < 6; ++k) {
    const auto in = random_input(rng, 8);
    const auto sol = tracking::solve_horizon(p, b, kRef, in, be);
    REQUIRE_FALSE(sol.suboptimal);
    double soc = in.soc_init;
    for (const auto& s : sol.steps) {
      CHECK_FALSE((s.v_dis && s.v_ch));
      const double next = soc - b.eta_dis * s.p_dis * p.dt_h / b.c_rated +
                          b.eta_ch * s.p_ch * p.dt_h / b.c_rated;
      CHECK(std::abs(next - s.soc) <= 1e-7);
      CHECK(s.soc >= b.soc_min - 1e-9);
      CHECK(s.soc <= b.soc_max + 1e-9);
      CHECK(pwl::check_fill_order(probe.expansion, s.segments, s.binaries, 1e-6).ok);
      soc = s.soc;
    }
    // L(t) sits on |f_t - f_{t-1}| and the out-of-limit slacks on their
    // max-forms, so the solver objective equals the recomputed cost.
    const auto c = tracking::evaluate_solution_cost(sol, b, in.c_e, p);
    CHECK(std::abs(sol.objective - c.total_model) <= 1e-5 * (1.0 + sol.objective));
  }
}

TEST_CASE("Case1 optimum is never worse than the Case2 optimum under the Case1 objective") {
  const degradation::BatteryParams b;
  milp::ReferenceBackend be;
  std::mt19937_64 rng(77);
  TrackingParams p1;
  p1.n_seg = 4;
  TrackingParams p2 = p1;
  p2.mode = Objective::Case2;
  for (int k = 0; k < 6; ++k) {
    const auto in = random_input(rng, 8);
    const auto s1 = tracking::solve_horizon(p1, b, kRef, in, be);
    const auto s2 = tracking::solve_horizon(p2, b, kRef, in, be);
    const double case2_under_case1 = tracking::evaluate_solution_cost(s2, b, in.c_e, p1).total_model;
    CHECK(s1.objective <= case2_under_case1 + 1e-6 * (1.0 + std::abs(case2_under_case1)));
    CHECK(s2.objective <= s1.penalty + 1e-6 * (1.0 + s1.penalty));
  }
}

TEST_CASE("cost decomposition") {
  const degradation::BatteryParams b;
  TrackingParams p;
  tracking::HorizonSolution idle;
  idle.steps.resize(8);
  const auto z = tracking::evaluate_solution_cost(idle, b, std::vector<double>(8, 50.0), p);
  CHECK(z.bess_model == 0.0);
  CHECK(z.penalty == 0.0);
  CHECK(z.total_exact == 0.0);

  milp::ReferenceBackend be;
  std::mt19937_64 rng(5);
  p.n_seg = 4;
  const auto in = random_input(rng, 8);
  const auto sol = tracking::solve_horizon(p, b, kRef, in, be);
  const auto c = tracking::evaluate_solution_cost(sol, b, in.c_e, p);
  CHECK(c.total_model == c.bess_model + c.penalty);
  CHECK(c.total_exact == c.bess_exact + c.penalty);
  const auto exp = pwl::build_expansion([](double s) { return degradation::primitive(kRef, s); },
                                        b.soc_min, b.soc_max, p.n_seg);
  const double err = pwl::max_abs_error(exp, [](double s) { return degradation::primitive(kRef, s); },
                                        10001);
  // Per step the two losses differ by at most the interpolation error at both
  // endpoints (plus the fill-order slack); the grid max underestimates the
  // true max only negligibly, hence the small relative margin.
  const double bound = b.c_bess * 8 * 2.0 * err * 1.01 + 1e-6;
  CHECK(std::abs(c.total_model - c.total_exact) <= bound);
}

TEST_CASE("initial SOC outside the bounds is reported as infeasible") {
  milp::ReferenceBackend be;
  try {
    tracking::solve_horizon({}, {}, kRef, flat_input(8, 50, 50, 50, 0.9), be);
    FAIL("expected InfeasibleError");
  } catch (const tracking::InfeasibleError& e) {
    CHECK(std::string(e.what()).find("above soc_max") != std::string::npos);
  }
  CHECK_THROWS_AS(tracking::solve_horizon({}, {}, kRef, flat_input(8, 50, 50, 50, 0.1), be),
                  tracking::InfeasibleError);
}
