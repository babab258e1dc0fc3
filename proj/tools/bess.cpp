// Command-line front end. Exit codes: 0 ok, 1 other error, 2 configuration or
// input error, 3 infeasible model, 4 solver limit.

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "bess/degradation/fit.hpp"
#include "bess/degradation/life_loss.hpp"
#include "bess/horizon/horizon.hpp"
#include "bess/io/config.hpp"
#include "bess/io/plot.hpp"
#include "bess/io/report.hpp"
#include "bess/io/synthetic.hpp"
#include "bess/io/timeseries.hpp"
#include "bess/milp/external.hpp"
#include "bess/pwl/pwl.hpp"
#include "bess/rainflow/rainflow.hpp"

namespace fs = std::filesystem;
using namespace bess;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kOther = 1, kConfig = 2, kInfeasible = 3, kLimit = 4 };

struct Common {
  std::string config;
  std::string mode;
  int lambda = 0;
  std::string solver;
  std::optional<std::uint64_t> seed;
  std::string out = "out";
};

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

io::RunConfig load_run_config(const Common& c) {
  io::RunConfig cfg = c.config.empty() ? io::parse_config(io::default_config_text(), fs::current_path())
                                       : io::load_config(c.config);
  if (c.lambda != 0) cfg.tracking.n_seg = c.lambda;
  if (!c.solver.empty()) cfg.backend = c.solver;
  if (c.mode == "case1") cfg.simulation.mode = tracking::Objective::Case1;
  if (c.mode == "case2") cfg.simulation.mode = tracking::Objective::Case2;
  cfg.tracking.mode = cfg.simulation.mode;
  cfg.validate();
  return cfg;
}

horizon::SeriesData synthetic_series(std::uint64_t seed) {
  const auto day = io::generate_synthetic_day(seed);
  horizon::SeriesData d;
  d.timestamps = day.p_sch.timestamps();
  d.p_sch = day.p_sch.values;
  d.p_wind_f = day.p_wind_f.values;
  d.c_e = day.c_e.values;
  return d;
}

std::unique_ptr<milp::SolverBackend> backend_for(const io::RunConfig& cfg) {
  return milp::make_backend(cfg.backend);
}

int cmd_fit(const std::string& samples_path) {
  const auto samples = io::load_cycle_samples(samples_path);
  const auto curve = degradation::fit_polynomial_curve(samples);
  const auto& a = std::get<degradation::Polynomial4>(curve.form()).a;
  json j = {{"family", "poly4"}, {"a", a}};
  std::cout << j.dump(2) << '\n';
  std::cerr << "residual norm: " << num(degradation::residual_norm(curve, samples)) << '\n';
  return kOk;
}

tracking::HorizonInput read_slice(const std::string& path, std::size_t window) {
  std::ifstream in(path);
  if (!in) throw io::ConfigError("cannot open input slice " + path);
  std::string line;
  std::size_t lineno = 0;
  tracking::HorizonInput h;
  bool stamped = false;
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string x;
    while (std::getline(ss, x, ',')) f.push_back(x);
    if (!header) {
      if (line == "timestamp,P_sch,P_wind_f,C_E") {
        stamped = true;
      } else if (line != "P_sch,P_wind_f,C_E") {
        throw io::ParseError(path, lineno, "expected header '[timestamp,]P_sch,P_wind_f,C_E'");
      }
      header = true;
      continue;
    }
    const std::size_t off = stamped ? 1 : 0;
    if (f.size() != 3 + off) throw io::ParseError(path, lineno, "wrong field count");
    try {
      h.p_sch.push_back(std::stod(f[off]));
      h.p_wind_f.push_back(std::stod(f[off + 1]));
      h.c_e.push_back(std::stod(f[off + 2]));
    } catch (const std::exception&) {
      throw io::ParseError(path, lineno, "bad number");
    }
  }
  if (h.p_sch.size() != window) {
    throw io::ConfigError("input slice has " + std::to_string(h.p_sch.size()) +
                          " rows, the horizon needs " + std::to_string(window));
  }
  return h;
}

int cmd_solve_one(const Common& c, const std::string& input, std::optional<double> soc) {
  const io::RunConfig cfg = load_run_config(c);
  const auto window = static_cast<std::size_t>(cfg.tracking.steps());
  tracking::HorizonInput h;
  if (!input.empty()) {
    h = read_slice(input, window);
  } else {
    const auto data = c.seed ? synthetic_series(*c.seed) : io::load_series(cfg);
    const std::size_t s = cfg.simulation.start;
    if (data.p_sch.size() < s + window) throw io::ConfigError("data: series too short for one window");
    h.p_sch.assign(data.p_sch.begin() + s, data.p_sch.begin() + s + window);
    h.p_wind_f.assign(data.p_wind_f.begin() + s, data.p_wind_f.begin() + s + window);
    h.c_e.assign(data.c_e.begin() + s, data.c_e.begin() + s + window);
  }
  h.soc_init = soc.value_or(cfg.simulation.soc_initial);
  if (h.soc_init < cfg.battery.soc_min || h.soc_init > cfg.battery.soc_max) {
    throw io::ConfigError("--soc outside [battery.soc_min, battery.soc_max]");
  }
  const auto curve = cfg.make_curve();
  auto backend = backend_for(cfg);
  const auto sol = tracking::solve_horizon(cfg.tracking, cfg.battery, curve, h, *backend, cfg.solve);
  const auto cost = tracking::evaluate_solution_cost(sol, cfg.battery, h.c_e, cfg.tracking);
  io::write_horizon_solution(sol, h, cost, c.out);
  std::cout << "objective " << num(sol.objective) << " gap " << num(sol.gap) << " nodes "
            << sol.nodes << (sol.suboptimal ? " (suboptimal)" : "") << '\n';
  std::cout << "wrote " << (fs::path(c.out) / "solution.json").string() << '\n';
  return kOk;
}

void print_totals(const char* label, const horizon::Totals& t, const std::string& currency) {
  std::cout << label << ": total " << num(t.total_cost) << ' ' << currency << ", life-loss "
            << num(t.bess_cost) << ", penalty " << num(t.penalty) << ", throughput "
            << num(t.throughput_mwh) << " MWh, out-of-limit " << num(t.out_of_limit_mwh)
            << " MWh\n";
}

int cmd_simulate(const Common& c, bool pair, bool plots) {
  const io::RunConfig cfg = load_run_config(c);
  const auto data = c.seed ? synthetic_series(*c.seed) : io::load_series(cfg);
  if (c.seed) io::check_series(cfg, data, static_cast<int>(std::lround(cfg.tracking.dt_h * 60)));
  const auto curve = cfg.make_curve();
  auto backend = backend_for(cfg);
  const fs::path out(c.out);
  if (pair) {
    const auto p = horizon::run_case_pair(cfg.simulation, data, cfg.tracking, cfg.battery, curve,
                                          *backend, cfg.solve);
    const auto f1 = io::write_report(p.case1, out, "case1_", cfg.currency);
    const auto f2 = io::write_report(p.case2, out, "case2_", cfg.currency);
    io::write_comparison(p, out, cfg.currency);
    if (plots) {
      io::render_plots(f1.trajectory_csv, out / "case1_plots");
      io::render_plots(f2.trajectory_csv, out / "case2_plots");
    }
    print_totals("case1", p.case1.totals, cfg.currency);
    print_totals("case2", p.case2.totals, cfg.currency);
    std::size_t held = 0;
    for (const auto& d : p.dominance) held += d.holds ? 1 : 0;
    std::cout << "dominance held at " << held << " of " << p.dominance.size() << " solves\n";
  } else {
    horizon::SimulationConfig sc = cfg.simulation;
    const auto rep =
        horizon::run_receding_horizon(sc, data, cfg.tracking, cfg.battery, curve, *backend, cfg.solve);
    const auto f = io::write_report(rep, out, "", cfg.currency);
    if (plots) io::render_plots(f.trajectory_csv, out / "plots");
    print_totals(sc.mode == tracking::Objective::Case1 ? "case1" : "case2", rep.totals, cfg.currency);
  }
  std::cout << "wrote " << out.string() << '\n';
  return kOk;
}

int cmd_validate(const Common& c, const std::string& soc_path) {
  const io::RunConfig cfg = load_run_config(c);
  const auto curve = cfg.make_curve();
  auto f = [&](double s) { return degradation::primitive(curve, s); };
  const auto exp = pwl::build_expansion(f, cfg.battery.soc_min, cfg.battery.soc_max,
                                        cfg.tracking.n_seg, cfg.tracking.big_m,
                                        cfg.tracking.eps_plus);
  std::ostringstream csv;
  csv << "k,breakpoint,F,slope\n";
  for (int k = 0; k <= exp.n_seg; ++k) {
    csv << k << ',' << num(exp.breakpoint(k)) << ',' << num(f(exp.breakpoint(k))) << ','
        << (k < exp.n_seg ? num(exp.slopes[static_cast<std::size_t>(k)]) : "") << '\n';
  }
  csv << "max_abs_error,,," << num(pwl::max_abs_error(exp, f, 10001)) << '\n';
  std::cout << csv.str();
  if (!c.out.empty()) {
    fs::create_directories(c.out);
    std::ofstream(fs::path(c.out) / "pwl.csv") << csv.str();
  }
  if (!soc_path.empty()) {
    const auto soc = io::load_soc_trajectory(soc_path);
    const auto cmp = rainflow::compare_models(soc, curve);
    json ex = json::array();
    for (const auto& e : cmp.excursions) {
      ex.push_back({{"type", e.full ? "full" : "half"}, {"depth", e.depth}, {"count", e.count},
                    {"loss", e.loss}});
    }
    const json j = {{"points", soc.size()},
                    {"linear_loss", cmp.linear_loss},
                    {"rainflow_loss", cmp.rainflow_loss},
                    {"linear_cost", cmp.linear_loss * cfg.battery.c_bess},
                    {"rainflow_cost", cmp.rainflow_loss * cfg.battery.c_bess},
                    {"full_cycles", cmp.full_cycles},
                    {"half_cycles", cmp.half_cycles},
                    {"excursions", ex},
                    {"note", cmp.note}};
    std::cout << j.dump(2) << '\n';
    if (!c.out.empty()) std::ofstream(fs::path(c.out) / "rainflow.json") << j.dump(2) << '\n';
  }
  return kOk;
}

int cmd_gen_data(const Common& c) {
  const auto day = io::generate_synthetic_day(c.seed.value_or(io::kDefaultSeed));
  const fs::path out(c.out);
  fs::create_directories(out);
  io::save_timeseries(out / "p_sch.csv", day.p_sch);
  io::save_timeseries(out / "p_wind_f.csv", day.p_wind_f);
  io::save_timeseries(out / "c_e.csv", day.c_e);
  if (!fs::exists(out / "config.json")) std::ofstream(out / "config.json") << io::default_config_text();
  std::cout << "wrote " << day.p_sch.values.size() << " steps to " << out.string() << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Battery-assisted wind schedule tracking"};
  app.require_subcommand(1);
  Common c;
  auto add_common = [&](CLI::App* s, bool with_out = true) {
    s->add_option("--config", c.config, "run configuration (JSON)")->check(CLI::ExistingFile);
    s->add_option("--mode", c.mode, "objective: case1 or case2")
        ->check(CLI::IsMember({"case1", "case2", "pair"}));
    s->add_option("--lambda", c.lambda, "PWL segment count")->check(CLI::PositiveNumber);
    s->add_option("--solver", c.solver, "reference or external")
        ->check(CLI::IsMember({"reference", "external"}));
    if (with_out) s->add_option("--out", c.out, "output directory");
  };
  auto seed_opt = [&](CLI::App* s, const char* help) {
    s->add_option_function<std::uint64_t>("--seed", [&](const std::uint64_t& v) { c.seed = v; },
                                          help);
  };

  std::string samples;
  auto* fit = app.add_subcommand("fit", "fit a quartic cycle-life curve to cycle-test data");
  fit->add_option("samples", samples, "CSV with header dod,cycles")->required()->check(CLI::ExistingFile);

  std::string input;
  std::optional<double> soc;
  auto* one = app.add_subcommand("solve-one", "solve a single horizon window");
  add_common(one);
  one->add_option("--input", input, "slice CSV: [timestamp,]P_sch,P_wind_f,C_E")
      ->check(CLI::ExistingFile);
  one->add_option_function<double>("--soc", [&](const double& v) { soc = v; }, "initial SOC");
  seed_opt(one, "use the synthetic day with this seed instead of the data files");

  bool no_plots = false;
  auto* sim = app.add_subcommand("simulate", "run the receding-horizon loop");
  add_common(sim);
  seed_opt(sim, "use the synthetic day with this seed instead of the data files");
  sim->add_flag("--no-plots", no_plots, "skip the SVG charts");

  std::string soc_path;
  auto* val = app.add_subcommand("validate", "PWL breakpoint report and rainflow comparison");
  add_common(val);
  c.out.clear();
  val->add_option("--soc", soc_path, "SOC trajectory (trajectory CSV or timestamp,value)")
      ->check(CLI::ExistingFile);

  std::string trajectory;
  auto* plot = app.add_subcommand("plot", "render SVG charts from a trajectory CSV");
  plot->add_option("trajectory", trajectory, "trajectory CSV")->required()->check(CLI::ExistingFile);
  plot->add_option("--out", c.out, "output directory");

  auto* gen = app.add_subcommand("gen-data", "write the synthetic day and a default config");
  gen->add_option("--out", c.out, "output directory");
  seed_opt(gen, "generator seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int r = app.exit(e);
    return r == 0 ? kOk : kConfig;
  }
  if (c.out.empty() && !val->parsed()) c.out = "out";

  try {
    if (fit->parsed()) return cmd_fit(samples);
    if (one->parsed()) return cmd_solve_one(c, input, soc);
    if (sim->parsed()) {
      const bool pair = c.mode == "pair";
      if (pair) c.mode.clear();
      return cmd_simulate(c, pair, !no_plots);
    }
    if (val->parsed()) return cmd_validate(c, soc_path);
    if (plot->parsed()) {
      for (const auto& p : io::render_plots(trajectory, c.out)) std::cout << "wrote " << p.string() << '\n';
      return kOk;
    }
    if (gen->parsed()) return cmd_gen_data(c);
  } catch (const io::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const io::ParseError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kConfig;
  } catch (const io::SeriesError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kConfig;
  } catch (const degradation::CurveError& e) {
    std::cerr << "curve error: " << e.what() << '\n';
    return kConfig;
  } catch (const tracking::InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return kInfeasible;
  } catch (const tracking::SolverLimitError& e) {
    std::cerr << "solver limit: " << e.what() << '\n';
    return kLimit;
  } catch (const horizon::HorizonAbort& e) {
    std::cerr << (e.infeasible() ? "infeasible: " : "solver limit: ") << e.what() << "\n"
              << e.dump();
    return e.infeasible() ? kInfeasible : kLimit;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kOther;
  }
  return kOther;
}
