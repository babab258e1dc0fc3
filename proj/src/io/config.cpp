#include "bess/io/config.hpp"

#include <cmath>
#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>

#include "bess/io/timeseries.hpp"

namespace bess::io {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, const std::string& section,
                    const std::set<std::string>& allowed) {
  if (!obj.is_object()) throw ConfigError(section + ": expected an object");
  for (const auto& [k, v] : obj.items()) {
    if (!allowed.count(k)) throw ConfigError(section + ": unknown key '" + k + "'");
  }
}

template <class T>
void read(const json& obj, const std::string& section, const char* key, T& out) {
  if (!obj.contains(key)) return;
  try {
    out = obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(section + "." + key + ": wrong type");
  }
}

void read_opt(const json& obj, const std::string& section, const char* key,
              std::optional<double>& out) {
  if (!obj.contains(key) || obj.at(key).is_null()) return;
  double v = 0.0;
  read(obj, section, key, v);
  out = v;
}

int minutes_of(double dt_h) { return static_cast<int>(std::lround(dt_h * 60.0)); }

}  // namespace

degradation::CycleLifeCurve RunConfig::make_curve() const {
  try {
    if (curve.family == "biexp") {
      return degradation::CycleLifeCurve::bi_exponential(curve.b1, curve.c1, curve.b2, curve.c2);
    }
    if (curve.family == "poly4") return degradation::CycleLifeCurve::polynomial(curve.a);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("curve: ") + e.what());
  }
  throw ConfigError("curve: unknown family '" + curve.family + "' (use biexp or poly4)");
}

void RunConfig::validate() const {
  try {
    battery.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  (void)make_curve();

  const auto& t = tracking;
  if (!(t.dt_h > 0.0)) throw ConfigError("tracking.dt_min: must be positive");
  if (std::abs(t.dt_h * 60.0 - std::round(t.dt_h * 60.0)) > 1e-9) {
    throw ConfigError("tracking.dt_min: must be a whole number of minutes");
  }
  if (!(t.horizon_h > 0.0)) throw ConfigError("tracking.horizon_h: must be positive");
  {
    const double r = t.horizon_h / t.dt_h;
    if (std::abs(r - std::round(r)) > 1e-9 * std::max(1.0, r)) {
      throw ConfigError("tracking.horizon_h: not a whole number of dt steps");
    }
  }
  if (!(t.lambda_lower >= 0.0)) throw ConfigError("tracking.lambda_lower: must be >= 0");
  if (!(t.lambda_upper >= 0.0)) throw ConfigError("tracking.lambda_upper: must be >= 0");
  if (!(t.gamma_lower >= 0.0)) throw ConfigError("tracking.gamma_lower: must be >= 0");
  if (!(t.gamma_upper >= 0.0)) throw ConfigError("tracking.gamma_upper: must be >= 0");
  if (t.n_seg < 1) throw ConfigError("tracking.n_seg: must be >= 1");
  const double width = (battery.soc_max - battery.soc_min) / t.n_seg;
  if (t.big_m && *t.big_m < width) {
    throw ConfigError("tracking.big_m: must be >= segment width (soc_max - soc_min) / n_seg");
  }
  if (t.eps_plus && !(*t.eps_plus > 0.0 && *t.eps_plus < width)) {
    throw ConfigError("tracking.eps_plus: must lie in (0, segment width)");
  }

  if (simulation.steps < 1) throw ConfigError("simulation.steps: must be >= 1");
  if (simulation.soc_initial < battery.soc_min || simulation.soc_initial > battery.soc_max) {
    throw ConfigError("simulation.soc_initial: outside [battery.soc_min, battery.soc_max]");
  }

  try {
    solve.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("solver: ") + e.what());
  }
  if (backend != "reference" && backend != "external") {
    throw ConfigError("solver.backend: must be 'reference' or 'external'");
  }
}

RunConfig parse_config(const std::string& text, const std::filesystem::path& base_dir) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  reject_unknown(root, "config",
                 {"currency", "battery", "curve", "tracking", "simulation", "solver", "data"});
  RunConfig c;
  read(root, "config", "currency", c.currency);

  if (root.contains("battery")) {
    const json& b = root["battery"];
    reject_unknown(b, "battery",
                   {"C_rated_MWh", "C_BESS", "P_dis_max_MW", "P_ch_max_MW", "eta_dis", "eta_ch",
                    "soc_min", "soc_max"});
    read(b, "battery", "C_rated_MWh", c.battery.c_rated);
    read(b, "battery", "C_BESS", c.battery.c_bess);
    read(b, "battery", "P_dis_max_MW", c.battery.p_dis_max);
    read(b, "battery", "P_ch_max_MW", c.battery.p_ch_max);
    read(b, "battery", "eta_dis", c.battery.eta_dis);
    read(b, "battery", "eta_ch", c.battery.eta_ch);
    read(b, "battery", "soc_min", c.battery.soc_min);
    read(b, "battery", "soc_max", c.battery.soc_max);
  }

  if (root.contains("curve")) {
    const json& cv = root["curve"];
    reject_unknown(cv, "curve", {"family", "a", "b1", "c1", "b2", "c2"});
    read(cv, "curve", "family", c.curve.family);
    if (c.curve.family == "poly4") {
      std::vector<double> a;
      read(cv, "curve", "a", a);
      if (a.size() != 5) throw ConfigError("curve.a: poly4 needs exactly 5 coefficients");
      std::copy(a.begin(), a.end(), c.curve.a.begin());
    } else if (c.curve.family == "biexp") {
      read(cv, "curve", "b1", c.curve.b1);
      read(cv, "curve", "c1", c.curve.c1);
      read(cv, "curve", "b2", c.curve.b2);
      read(cv, "curve", "c2", c.curve.c2);
    }
  }

  if (root.contains("tracking")) {
    const json& t = root["tracking"];
    reject_unknown(t, "tracking",
                   {"lambda_lower", "lambda_upper", "gamma_lower", "gamma_upper", "n_seg",
                    "horizon_h", "dt_min", "big_m", "eps_plus"});
    read(t, "tracking", "lambda_lower", c.tracking.lambda_lower);
    read(t, "tracking", "lambda_upper", c.tracking.lambda_upper);
    read(t, "tracking", "gamma_lower", c.tracking.gamma_lower);
    read(t, "tracking", "gamma_upper", c.tracking.gamma_upper);
    read(t, "tracking", "n_seg", c.tracking.n_seg);
    read(t, "tracking", "horizon_h", c.tracking.horizon_h);
    double dt_min = c.tracking.dt_h * 60.0;
    read(t, "tracking", "dt_min", dt_min);
    c.tracking.dt_h = dt_min / 60.0;
    read_opt(t, "tracking", "big_m", c.tracking.big_m);
    read_opt(t, "tracking", "eps_plus", c.tracking.eps_plus);
  }

  if (root.contains("simulation")) {
    const json& s = root["simulation"];
    reject_unknown(s, "simulation", {"start", "steps", "soc_initial", "mode"});
    long long start = static_cast<long long>(c.simulation.start);
    long long steps = static_cast<long long>(c.simulation.steps);
    read(s, "simulation", "start", start);
    read(s, "simulation", "steps", steps);
    if (start < 0) throw ConfigError("simulation.start: must be >= 0");
    if (steps < 1) throw ConfigError("simulation.steps: must be >= 1");
    c.simulation.start = static_cast<std::size_t>(start);
    c.simulation.steps = static_cast<std::size_t>(steps);
    read(s, "simulation", "soc_initial", c.simulation.soc_initial);
    std::string mode = "case1";
    read(s, "simulation", "mode", mode);
    if (mode == "case1") {
      c.simulation.mode = tracking::Objective::Case1;
    } else if (mode == "case2") {
      c.simulation.mode = tracking::Objective::Case2;
    } else {
      throw ConfigError("simulation.mode: must be 'case1' or 'case2'");
    }
  }
  c.tracking.mode = c.simulation.mode;

  if (root.contains("solver")) {
    const json& s = root["solver"];
    reject_unknown(s, "solver",
                   {"backend", "feasibility_tol", "integrality_tol", "absolute_gap",
                    "relative_gap", "node_limit", "time_limit_s", "branch_priorities"});
    read(s, "solver", "backend", c.backend);
    read(s, "solver", "feasibility_tol", c.solve.feasibility_tol);
    read(s, "solver", "integrality_tol", c.solve.integrality_tol);
    read(s, "solver", "absolute_gap", c.solve.absolute_gap);
    read(s, "solver", "relative_gap", c.solve.relative_gap);
    read(s, "solver", "node_limit", c.solve.node_limit);
    read(s, "solver", "time_limit_s", c.solve.time_limit_s);
    read(s, "solver", "branch_priorities", c.solve.use_branch_priorities);
  }

  if (root.contains("data") && !root["data"].is_null()) {
    const json& d = root["data"];
    reject_unknown(d, "data", {"p_sch", "p_wind_f", "c_e", "p_wind_actual"});
    DataPaths p;
    auto path_of = [&](const char* key, bool required) {
      std::string s;
      if (d.contains(key) && !d[key].is_null()) read(d, "data", key, s);
      if (s.empty()) {
        if (required) throw ConfigError(std::string("data.") + key + ": missing path");
        return std::filesystem::path{};
      }
      std::filesystem::path q(s);
      return q.is_absolute() ? q : base_dir / q;
    };
    p.p_sch = path_of("p_sch", true);
    p.p_wind_f = path_of("p_wind_f", true);
    p.c_e = path_of("c_e", true);
    p.p_wind_actual = path_of("p_wind_actual", false);
    c.data = p;
  }

  c.validate();
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.parent_path());
}

std::string default_config_text() {
  const RunConfig d;
  json j;
  j["currency"] = d.currency;
  j["battery"] = {{"C_rated_MWh", d.battery.c_rated}, {"C_BESS", d.battery.c_bess},
                  {"P_dis_max_MW", d.battery.p_dis_max}, {"P_ch_max_MW", d.battery.p_ch_max},
                  {"eta_dis", d.battery.eta_dis}, {"eta_ch", d.battery.eta_ch},
                  {"soc_min", d.battery.soc_min}, {"soc_max", d.battery.soc_max}};
  j["curve"] = {{"family", "biexp"}, {"b1", d.curve.b1}, {"c1", d.curve.c1},
                {"b2", d.curve.b2}, {"c2", d.curve.c2}};
  j["tracking"] = {{"lambda_lower", d.tracking.lambda_lower},
                   {"lambda_upper", d.tracking.lambda_upper},
                   {"gamma_lower", d.tracking.gamma_lower},
                   {"gamma_upper", d.tracking.gamma_upper},
                   {"n_seg", d.tracking.n_seg},
                   {"horizon_h", d.tracking.horizon_h},
                   {"dt_min", d.tracking.dt_h * 60.0},
                   {"big_m", nullptr},
                   {"eps_plus", nullptr}};
  j["simulation"] = {{"start", d.simulation.start},
                     {"steps", d.simulation.steps},
                     {"soc_initial", d.simulation.soc_initial},
                     {"mode", "case1"}};
  j["solver"] = {{"backend", d.backend},
                 {"feasibility_tol", d.solve.feasibility_tol},
                 {"integrality_tol", d.solve.integrality_tol},
                 {"absolute_gap", d.solve.absolute_gap},
                 {"relative_gap", d.solve.relative_gap},
                 {"node_limit", d.solve.node_limit},
                 {"time_limit_s", d.solve.time_limit_s},
                 {"branch_priorities", d.solve.use_branch_priorities}};
  j["data"] = {{"p_sch", "p_sch.csv"}, {"p_wind_f", "p_wind_f.csv"}, {"c_e", "c_e.csv"},
               {"p_wind_actual", nullptr}};
  return j.dump(2) + "\n";
}

void check_series(const RunConfig& config, const horizon::SeriesData& data, int step_minutes) {
  const int dt_min = minutes_of(config.tracking.dt_h);
  if (step_minutes != dt_min) {
    throw ConfigError("data: series step " + std::to_string(step_minutes) +
                      " min does not match tracking.dt_min " + std::to_string(dt_min));
  }
  const std::size_t n = data.p_sch.size();
  if (data.p_wind_f.size() != n || data.c_e.size() != n ||
      (!data.p_wind_actual.empty() && data.p_wind_actual.size() != n)) {
    throw ConfigError("data: series lengths differ");
  }
  const std::size_t window = static_cast<std::size_t>(config.tracking.steps());
  const std::size_t need = config.simulation.start + config.simulation.steps + window;
  if (n < need) {
    std::ostringstream msg;
    msg << "data: series too short: " << n << " points, need " << need << " (start "
        << config.simulation.start << " + " << config.simulation.steps << " steps + " << window
        << " lookahead points)";
    throw ConfigError(msg.str());
  }
  for (double c : data.c_e) {
    if (c < 0.0) throw ConfigError("data: negative price in c_e");
  }
}

horizon::SeriesData load_series(const RunConfig& config) {
  if (!config.data) throw ConfigError("data: no data section in config");
  const int dt_min = minutes_of(config.tracking.dt_h);
  // Load with the file's own step first so a mismatch reports as a config error.
  auto load = [&](const std::filesystem::path& p, const char* unit) {
    try {
      return load_timeseries(p, dt_min, std::string(unit));
    } catch (const SeriesError& e) {
      throw ConfigError(std::string("data: ") + e.what());
    } catch (const ParseError& e) {
      throw ConfigError(std::string("data: ") + e.what());
    } catch (const std::runtime_error& e) {
      throw ConfigError(std::string("data: ") + e.what());
    }
  };
  const TimeSeries sch = load(config.data->p_sch, "MW");
  const TimeSeries wind = load(config.data->p_wind_f, "MW");
  const TimeSeries price = load(config.data->c_e, "currency/MWh");
  if (wind.start != sch.start || price.start != sch.start) {
    throw ConfigError("data: series start times differ");
  }
  horizon::SeriesData d;
  d.timestamps = sch.timestamps();
  d.p_sch = sch.values;
  d.p_wind_f = wind.values;
  d.c_e = price.values;
  if (!config.data->p_wind_actual.empty()) {
    const TimeSeries act = load(config.data->p_wind_actual, "MW");
    if (act.start != sch.start) throw ConfigError("data: series start times differ");
    d.p_wind_actual = act.values;
  }
  check_series(config, d, dt_min);
  return d;
}

}  // namespace bess::io
