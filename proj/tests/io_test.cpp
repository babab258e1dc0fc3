#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <random>
#include <set>
#include <sstream>

#include "bess/io/config.hpp"
#include "bess/io/plot.hpp"
#include "bess/io/report.hpp"
#include "bess/io/synthetic.hpp"
#include "bess/io/timeseries.hpp"

using namespace bess;
using io::TimeSeries;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("bess_io_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string csv_rows(std::size_t n, int step = 15, const std::string& unit = "MW") {
  std::ostringstream o;
  if (!unit.empty()) o << "# unit: " << unit << "\n";
  o << "timestamp,value\n";
  for (std::size_t i = 0; i < n; ++i) {
    o << io::format_timestamp(io::parse_timestamp("2024-06-01T00:00:00") +
                              static_cast<std::int64_t>(i) * step)
      << ',' << 50.0 + static_cast<double>(i) << '\n';
  }
  return o.str();
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream f(p);
  f << text;
}

horizon::StepRecord record(std::size_t i, double p_dis, double p_ch, double soc) {
  horizon::StepRecord r;
  r.index = i;
  r.timestamp = io::format_timestamp(io::parse_timestamp("2024-06-01T00:00:00") +
                                     static_cast<std::int64_t>(i) * 15);
  r.p_sch = 60.0;
  r.p_wind = 55.0;
  r.p_dis = p_dis;
  r.p_ch = p_ch;
  r.p_joint = r.p_wind + p_dis - p_ch;
  r.soc = soc;
  r.band_lower = 57.0;
  r.band_upper = 63.0;
  r.out_lower = std::max(0.0, 57.0 - r.p_joint);
  r.bess_cost = 0.1 * (p_dis + p_ch);
  r.penalty = 35.0 * 0.25 * r.out_lower;
  r.step_cost = r.bess_cost + r.penalty;
  r.unit_loss_price = 12.5;
  r.penalty_price = 35.0;
  return r;
}

horizon::SimulationReport small_report() {
  horizon::SimulationReport rep;
  rep.soc_initial = 0.5;
  rep.records = {record(0, 2.0, 0.0, 0.479), record(1, 0.0, 0.0, 0.479),
                 record(2, 0.0, 3.0, 0.50750000000000001)};
  rep.solves.resize(3);
  rep.totals = horizon::summarize(rep.records, 0.25);
  return rep;
}

}  // namespace

TEST_CASE("timestamps parse and format") {
  const auto t = io::parse_timestamp("2024-06-01T00:15:00");
  CHECK(t - io::parse_timestamp("2024-06-01T00:00") == 15);
  CHECK(io::format_timestamp(t) == "2024-06-01T00:15:00");
  CHECK(io::parse_timestamp("2024-06-01T00:15:00Z") == t);
  CHECK_THROWS_AS(io::parse_timestamp("2024-13-01T00:00:00"), std::invalid_argument);
  CHECK_THROWS_AS(io::parse_timestamp("yesterday"), std::invalid_argument);
}

TEST_CASE("time series round trip is bit-exact") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  TimeSeries ts;
  ts.start = io::parse_timestamp("2024-02-28T22:00:00");
  ts.unit = "MW";
  for (int i = 0; i < 500; ++i) ts.values.push_back(u(rng) * std::pow(10.0, i % 7 - 3));
  ts.values.push_back(0.1);
  ts.values.push_back(-0.0);
  ts.values.push_back(5e-324);
  const fs::path dir = scratch("roundtrip");
  io::save_timeseries(dir / "s.csv", ts);
  const TimeSeries back = io::load_timeseries(dir / "s.csv", 15, std::string("MW"));
  CHECK(back.start == ts.start);
  CHECK(back.unit == "MW");
  REQUIRE(back.values.size() == ts.values.size());
  for (std::size_t i = 0; i < ts.values.size(); ++i) {
    CHECK(std::memcmp(&back.values[i], &ts.values[i], sizeof(double)) == 0);
  }
}

TEST_CASE("time series errors") {
  SUBCASE("parse error carries the line number") {
    std::istringstream in("# unit: MW\ntimestamp,value\n2024-06-01T00:00:00,1\n2024-06-01T00:15:00,abc\n");
    try {
      io::read_timeseries(in, 15);
      FAIL("expected ParseError");
    } catch (const io::ParseError& e) {
      CHECK(e.line() == 4);
      CHECK(std::string(e.what()).find(":4:") != std::string::npos);
    }
  }
  SUBCASE("bad header") {
    std::istringstream in("time,value\n");
    CHECK_THROWS_AS(io::read_timeseries(in, 15), io::ParseError);
  }
  SUBCASE("duplicate timestamp") {
    std::istringstream in("timestamp,value\n2024-06-01T00:00:00,1\n2024-06-01T00:00:00,2\n");
    CHECK_THROWS_WITH_AS(io::read_timeseries(in, 15), doctest::Contains("duplicate"),
                         io::SeriesError);
  }
  SUBCASE("gap") {
    std::istringstream in("timestamp,value\n2024-06-01T00:00:00,1\n2024-06-01T00:30:00,2\n");
    CHECK_THROWS_AS(io::read_timeseries(in, 15), io::SeriesError);
  }
  SUBCASE("step mismatch") {
    std::istringstream in(csv_rows(4, 60));
    CHECK_THROWS_AS(io::read_timeseries(in, 15), io::SeriesError);
  }
  SUBCASE("unit mismatch") {
    std::istringstream in(csv_rows(4, 15, "kW"));
    CHECK_THROWS_WITH_AS(io::read_timeseries(in, 15, "x", std::string("MW")),
                         doctest::Contains("unit"), io::SeriesError);
  }
  SUBCASE("missing file") {
    CHECK_THROWS_AS(io::load_timeseries("/nonexistent/x.csv", 15), std::runtime_error);
  }
}

TEST_CASE("moving average schedule") {
  TimeSeries ramp;
  for (int i = 0; i < 10; ++i) ramp.values.push_back(i);
  const auto m = io::moving_average_schedule(ramp, 45);
  for (int k = 1; k < 9; ++k) CHECK(m.values[k] == doctest::Approx((k - 1 + k + k + 1) / 3.0));
  CHECK(m.values[0] == 0.5);
  CHECK(m.values[9] == 8.5);

  TimeSeries flat;
  flat.values.assign(12, 7.25);
  const auto f = io::moving_average_schedule(flat, 60);
  for (double v : f.values) CHECK(v == 7.25);

  const auto id = io::moving_average_schedule(ramp, 15);
  CHECK(id.values == ramp.values);

  // Even count: window i-1..i+2.
  const auto even = io::moving_average_schedule(ramp, 60);
  CHECK(even.values[4] == doctest::Approx((3 + 4 + 5 + 6) / 4.0));

  CHECK_THROWS_AS(io::moving_average_schedule(ramp, 20), std::invalid_argument);
  CHECK_THROWS_AS(io::moving_average_schedule(ramp, 0), std::invalid_argument);
}

TEST_CASE("synthetic day") {
  const auto a = io::generate_synthetic_day(io::kDefaultSeed);
  const auto b = io::generate_synthetic_day(io::kDefaultSeed);
  CHECK(a.p_sch.values == b.p_sch.values);
  CHECK(a.p_wind_f.values == b.p_wind_f.values);
  CHECK(a.c_e.values == b.c_e.values);
  CHECK(a.p_sch.values.size() == 104);
  CHECK(a.p_sch.timestamp(0) == "2024-06-01T00:00:00");
  CHECK(a.c_e.unit == "currency/MWh");

  const auto other = io::generate_synthetic_day(io::kDefaultSeed + 1);
  CHECK(other.p_sch.values == a.p_sch.values);
  CHECK(other.p_wind_f.values != a.p_wind_f.values);

  io::SyntheticOptions flat;
  flat.deviation_amplitude = 0.0;
  const auto z = io::generate_synthetic_day(io::kDefaultSeed, flat);
  CHECK(z.p_wind_f.values == z.p_sch.values);

  // Regression pins from the first verified run.
  const double sch[] = {55.228973436780485, 55.255331111900574, 55.078119482946057,
                        54.661621459511956, 53.982795810191831};
  const double wind[] = {51.406988138089773, 49.038077863849885, 46.824904879897773,
                         51.477058059397407, 47.474759571419142};
  for (int i = 0; i < 5; ++i) {
    CHECK(a.p_sch.values[i] == sch[i]);
    CHECK(a.p_wind_f.values[i] == wind[i]);
    CHECK(a.c_e.values[i] == 35.0);
  }
  for (std::size_t i = 0; i < a.c_e.values.size(); ++i) {
    const double hour = static_cast<double>(i) * 0.25;
    CHECK(a.c_e.values[i] == (hour >= 8.0 && hour < 20.0 ? 65.0 : 35.0));
    CHECK(std::abs(a.p_wind_f.values[i] / a.p_sch.values[i] - 1.0) <= 0.15 + 1e-12);
  }
}

TEST_CASE("default config parses and validates") {
  const auto c = io::parse_config(io::default_config_text());
  CHECK(c.battery.c_rated == 25.0);
  CHECK(c.tracking.n_seg == 10);
  CHECK(c.tracking.dt_h == 0.25);
  CHECK(c.simulation.steps == 96);
  CHECK(c.backend == "reference");
  REQUIRE(c.data.has_value());
  CHECK(c.data->p_sch.filename() == "p_sch.csv");
}

TEST_CASE("each config invariant has its own message") {
  const nlohmann::json base = nlohmann::json::parse(io::default_config_text());
  struct Case {
    const char* section;
    const char* key;
    nlohmann::json value;
    const char* expect;
  };
  const std::vector<Case> cases{
      {"battery", "C_rated_MWh", 0.0, "C_rated"},
      {"battery", "C_BESS", -1.0, "C_BESS"},
      {"battery", "P_dis_max_MW", -1.0, "P_dis_max"},
      {"battery", "P_ch_max_MW", -1.0, "P_ch_max"},
      {"battery", "eta_ch", 1.2, "eta_ch"},
      {"battery", "eta_dis", 0.9, "eta_dis"},
      {"battery", "soc_min", -0.1, "soc_min must be at least"},
      {"battery", "soc_max", 1.1, "soc_max must be at most"},
      {"battery", "soc_min", 0.9, "soc_min must be below"},
      {"curve", "c1", 1.0, "curve"},
      {"curve", "family", "spline", "unknown family"},
      {"tracking", "dt_min", 0.0, "dt_min: must be positive"},
      {"tracking", "dt_min", 7.5, "whole number of minutes"},
      {"tracking", "horizon_h", 0.0, "horizon_h: must be positive"},
      {"tracking", "horizon_h", 1.1, "whole number of dt steps"},
      {"tracking", "lambda_lower", -0.1, "lambda_lower"},
      {"tracking", "lambda_upper", -0.1, "lambda_upper"},
      {"tracking", "gamma_lower", -1.0, "gamma_lower"},
      {"tracking", "gamma_upper", -1.0, "gamma_upper"},
      {"tracking", "n_seg", 0, "n_seg"},
      {"tracking", "big_m", 0.01, "big_m"},
      {"tracking", "eps_plus", 0.5, "eps_plus"},
      {"simulation", "steps", 0, "simulation.steps"},
      {"simulation", "start", -1, "simulation.start"},
      {"simulation", "soc_initial", 0.95, "soc_initial"},
      {"simulation", "mode", "case3", "simulation.mode"},
      {"solver", "backend", "cplex", "solver.backend"},
      {"solver", "feasibility_tol", 0.0, "feasibility"},
      {"solver", "integrality_tol", 0.0, "integrality"},
      {"solver", "absolute_gap", 0.0, "absolute gap"},
      {"solver", "relative_gap", 0.0, "relative gap"},
      {"solver", "node_limit", 0, "node limit"},
      {"solver", "time_limit_s", 0.0, "time limit"},
      {"solver", "typo", 1, "unknown key 'typo'"},
      {"tracking", "n_seg", "ten", "wrong type"},
  };
  std::set<std::string> seen;
  for (const auto& c : cases) {
    nlohmann::json j = base;
    j[c.section][c.key] = c.value;
    std::string msg;
    try {
      io::parse_config(j.dump());
    } catch (const io::ConfigError& e) {
      msg = e.what();
    }
    INFO(c.section << "." << c.key);
    CHECK(msg.find(c.expect) != std::string::npos);
    CHECK(seen.insert(msg).second);
  }
  CHECK_THROWS_WITH_AS(io::parse_config("{"), doctest::Contains("not valid JSON"), io::ConfigError);
  nlohmann::json poly = base;
  poly["curve"] = {{"family", "poly4"}, {"a", {1, 2, 3}}};
  CHECK_THROWS_WITH_AS(io::parse_config(poly.dump()), doctest::Contains("5 coefficients"),
                       io::ConfigError);
}

TEST_CASE("series length, step and start checks") {
  const fs::path dir = scratch("series");
  io::RunConfig cfg = io::parse_config(io::default_config_text(), dir);
  auto write_all = [&](std::size_t n, int step) {
    write_file(dir / "p_sch.csv", csv_rows(n, step));
    write_file(dir / "p_wind_f.csv", csv_rows(n, step));
    write_file(dir / "c_e.csv", csv_rows(n, step, "currency/MWh"));
  };
  write_all(104, 15);
  const auto d = io::load_series(cfg);
  CHECK(d.p_sch.size() == 104);
  CHECK(d.timestamps[1] == "2024-06-01T00:15:00");

  write_all(96, 15);
  CHECK_THROWS_WITH_AS(io::load_series(cfg), doctest::Contains("too short"), io::ConfigError);
  write_all(98, 15);
  CHECK_THROWS_WITH_AS(io::load_series(cfg), doctest::Contains("too short"), io::ConfigError);
  write_all(104, 60);
  CHECK_THROWS_AS(io::load_series(cfg), io::ConfigError);

  write_all(104, 15);
  write_file(dir / "c_e.csv", csv_rows(104, 15, "MW"));
  CHECK_THROWS_WITH_AS(io::load_series(cfg), doctest::Contains("unit"), io::ConfigError);

  write_all(104, 15);
  write_file(dir / "p_wind_f.csv", csv_rows(105, 15));
  CHECK_THROWS_WITH_AS(io::load_series(cfg), doctest::Contains("lengths differ"),
                       io::ConfigError);
}

TEST_CASE("report files round trip") {
  const fs::path dir = scratch("report");
  const auto rep = small_report();
  const auto files = io::write_report(rep, dir);
  const auto t = io::read_trajectory(files.trajectory_csv);
  CHECK(t.size() == rep.records.size());
  CHECK(t.timestamps[2] == "2024-06-01T00:30:00");
  for (const auto& name : io::trajectory_columns()) {
    if (name != "timestamp") CHECK(t.columns.count(name) == 1);
  }
  CHECK(t.at("P_ch")[2] == 3.0);
  CHECK(t.at("S_OC")[2] == 0.50750000000000001);
  CHECK(t.at("S_OC_prev")[0] == 0.5);
  CHECK(t.at("S_OC_prev")[1] == 0.479);

  const auto back = io::read_totals(files.totals_json);
  CHECK(back.total_cost == rep.totals.total_cost);
  CHECK(back.bess_cost == rep.totals.bess_cost);
  CHECK(back.penalty == rep.totals.penalty);
  CHECK(back.throughput_mwh == rep.totals.throughput_mwh);
  CHECK(back.out_of_limit_mwh == rep.totals.out_of_limit_mwh);

  std::ifstream in(files.totals_json);
  const auto j = nlohmann::json::parse(in);
  CHECK(j.at("totals").size() == 5);

  const auto soc = io::load_soc_trajectory(files.trajectory_csv);
  CHECK(soc == std::vector<double>{0.5, 0.479, 0.479, 0.50750000000000001});
}

TEST_CASE("idle report has five zero indices") {
  const fs::path dir = scratch("idle");
  horizon::SimulationReport rep;
  rep.soc_initial = 0.5;
  for (std::size_t i = 0; i < 4; ++i) rep.records.push_back(record(i, 0.0, 0.0, 0.5));
  for (auto& r : rep.records) {
    r.p_wind = r.p_sch;
    r.p_joint = r.p_sch;
    r.out_lower = 0.0;
    r.penalty = 0.0;
    r.bess_cost = 0.0;
    r.step_cost = 0.0;
  }
  rep.totals = horizon::summarize(rep.records, 0.25);
  const auto files = io::write_report(rep, dir, "idle_");
  CHECK(files.trajectory_csv.filename() == "idle_trajectory.csv");
  std::ifstream in(files.totals_json);
  const auto j = nlohmann::json::parse(in);
  for (const auto& [k, v] : j.at("totals").items()) CHECK(v.get<double>() == 0.0);

  const auto svgs = io::render_plots(files.trajectory_csv, dir / "plots");
  REQUIRE(svgs.size() == 3);
  std::ifstream c(svgs[2]);
  std::stringstream buf;
  buf << c.rdbuf();
  // SOC area comes first in panel (c): flat at the initial value.
  const std::string svg = buf.str();
  CHECK(svg.find("data-y-min=\"0.5\" data-y-max=\"0.5\"") != std::string::npos);
}

TEST_CASE("plots carry the data extents") {
  const fs::path dir = scratch("plots");
  const auto files = io::write_report(small_report(), dir);
  const auto svgs = io::render_plots(files.trajectory_csv, dir / "svg");
  REQUIRE(svgs.size() == 3);
  for (const auto& p : svgs) CHECK(fs::file_size(p) > 500);
  std::ifstream b(svgs[1]);
  std::stringstream buf;
  buf << b.rdbuf();
  // Panel (b): -P_ch min -3, P_out_lower max 5 (57 - 52), over rows 0..2.
  CHECK(buf.str().find("data-x-min=\"0\" data-x-max=\"2\" data-y-min=\"-3\" data-y-max=\"5\"") !=
        std::string::npos);
}

TEST_CASE("empty trajectory renders nothing") {
  const fs::path dir = scratch("empty");
  horizon::SimulationReport rep;
  const auto files = io::write_report(rep, dir);
  CHECK_THROWS_AS(io::render_plots(files.trajectory_csv, dir / "svg"), std::invalid_argument);
  CHECK_FALSE(fs::exists(dir / "svg"));
}

TEST_CASE("cycle sample CSV") {
  const fs::path dir = scratch("cycles");
  write_file(dir / "c.csv", "dod,cycles\n0.1,20000\n0.5,6000\n");
  const auto s = io::load_cycle_samples(dir / "c.csv");
  REQUIRE(s.size() == 2);
  CHECK(s[1].dod == 0.5);
  CHECK(s[1].cycles == 6000.0);
  write_file(dir / "bad.csv", "depth,n\n0.1,2\n");
  CHECK_THROWS_AS(io::load_cycle_samples(dir / "bad.csv"), io::ParseError);
  write_file(dir / "bad2.csv", "dod,cycles\n0.1,x\n");
  CHECK_THROWS_AS(io::load_cycle_samples(dir / "bad2.csv"), io::ParseError);
}

TEST_CASE("SOC trace from a plain series") {
  const fs::path dir = scratch("soc");
  write_file(dir / "soc.csv", "timestamp,value\n2024-06-01T00:00:00,0.5\n2024-06-01T00:15:00,0.4\n");
  CHECK(io::load_soc_trajectory(dir / "soc.csv") == std::vector<double>{0.5, 0.4});
}
