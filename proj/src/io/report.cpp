#include "bess/io/report.hpp"

#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <stdexcept>

#include "bess/io/timeseries.hpp"

namespace bess::io {

using nlohmann::json;

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::ofstream open_out(const std::filesystem::path& p) {
  std::ofstream out(p);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& p) {
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + p.string());
}

json totals_to_json(const horizon::Totals& t) {
  return {{"total_cost", t.total_cost},
          {"bess_life_loss_cost", t.bess_cost},
          {"out_of_limit_penalty", t.penalty},
          {"throughput_energy_mwh", t.throughput_mwh},
          {"out_of_limit_energy_mwh", t.out_of_limit_mwh}};
}

const char* mode_name(tracking::Objective m) {
  return m == tracking::Objective::Case1 ? "case1" : "case2";
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string f;
  while (std::getline(ss, f, ',')) {
    while (!f.empty() && (f.back() == '\r' || f.back() == ' ')) f.pop_back();
    out.push_back(f);
  }
  return out;
}

double to_double(const std::string& s, const std::filesystem::path& p, std::size_t line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError(p.string(), line, "bad number '" + s + "'");
  }
}

}  // namespace

ReportFiles write_report(const horizon::SimulationReport& report,
                         const std::filesystem::path& out_dir, const std::string& prefix,
                         const std::string& currency) {
  std::filesystem::create_directories(out_dir);
  ReportFiles files{out_dir / (prefix + "trajectory.csv"), out_dir / (prefix + "totals.json")};

  {
    auto out = open_out(files.trajectory_csv);
    const auto& cols = trajectory_columns();
    for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
    out << '\n';
    double soc_prev = report.soc_initial;
    for (const auto& r : report.records) {
      const std::string ts = r.timestamp.empty() ? std::to_string(r.index) : r.timestamp;
      out << ts << ',' << num(r.p_sch) << ',' << num(r.p_wind) << ',' << num(r.p_dis) << ','
          << num(r.p_ch) << ',' << num(r.p_joint) << ',' << num(r.soc) << ','
          << num(r.out_lower) << ',' << num(r.out_upper) << ',' << num(r.loss_exact) << ','
          << num(r.step_cost) << ',' << num(soc_prev) << ',' << num(r.band_lower) << ','
          << num(r.band_upper) << ',' << num(r.loss_model) << ',' << num(r.bess_cost) << ','
          << num(r.penalty) << ',' << num(r.unit_loss_price) << ',' << num(r.penalty_price)
          << '\n';
      soc_prev = r.soc;
    }
    finish(out, files.trajectory_csv);
  }

  json j;
  j["mode"] = mode_name(report.mode);
  j["currency"] = currency;
  j["totals"] = totals_to_json(report.totals);
  double max_gap = 0.0, max_wall = 0.0, sum_wall = 0.0;
  std::int64_t nodes = 0;
  int suboptimal = 0;
  for (const auto& s : report.solves) {
    max_gap = std::max(max_gap, s.gap);
    max_wall = std::max(max_wall, s.wall_s);
    sum_wall += s.wall_s;
    nodes += s.nodes;
    suboptimal += s.suboptimal ? 1 : 0;
  }
  j["diagnostics"] = {{"applied_steps", report.records.size()},
                      {"soc_initial", report.soc_initial},
                      {"soc_final", report.records.empty() ? report.soc_initial
                                                           : report.records.back().soc},
                      {"bess_life_loss_cost_pwl", report.bess_cost_model},
                      {"solves", report.solves.size()},
                      {"suboptimal_solves", suboptimal},
                      {"max_gap", max_gap},
                      {"total_nodes", nodes},
                      {"solve_wall_s_total", sum_wall},
                      {"solve_wall_s_max", max_wall},
                      {"run_wall_s", report.wall_s}};
  json solves = json::array();
  for (const auto& s : report.solves) {
    json e = {{"index", s.index}, {"objective", s.objective}, {"gap", s.gap},
              {"nodes", s.nodes}, {"wall_s", s.wall_s},       {"suboptimal", s.suboptimal}};
    if (s.case2_under_case1) e["case2_under_case1"] = *s.case2_under_case1;
    solves.push_back(e);
  }
  j["solves"] = solves;
  auto out = open_out(files.totals_json);
  out << j.dump(2) << '\n';
  finish(out, files.totals_json);
  return files;
}

std::filesystem::path write_comparison(const horizon::CasePair& pair,
                                       const std::filesystem::path& out_dir,
                                       const std::string& currency) {
  std::filesystem::create_directories(out_dir);
  auto rows = [](const horizon::SimulationReport& r) {
    double objective = 0.0;
    // Objective value of the run: what the mode optimizes, settled per step.
    objective = r.mode == tracking::Objective::Case1 ? r.totals.total_cost : r.totals.penalty;
    return json{{"objective", r.mode == tracking::Objective::Case1 ? "bess_cost+penalty" : "penalty"},
                {"objective_value", objective},
                {"out_of_limit_penalty", r.totals.penalty},
                {"bess_life_loss_cost", r.totals.bess_cost},
                {"sum_life_loss_and_penalty", r.totals.total_cost}};
  };
  std::size_t held = 0;
  for (const auto& d : pair.dominance) held += d.holds ? 1 : 0;
  json j;
  j["currency"] = currency;
  j["case1"] = rows(pair.case1);
  j["case2"] = rows(pair.case2);
  j["dominance"] = {{"solves", pair.dominance.size()}, {"holds", held}};
  const auto path = out_dir / "comparison.json";
  auto out = open_out(path);
  out << j.dump(2) << '\n';
  finish(out, path);
  return path;
}

horizon::Totals read_totals(const std::filesystem::path& totals_json) {
  std::ifstream in(totals_json);
  if (!in) throw std::runtime_error("cannot open " + totals_json.string());
  const json j = json::parse(in);
  const json& t = j.at("totals");
  horizon::Totals out;
  out.total_cost = t.at("total_cost").get<double>();
  out.bess_cost = t.at("bess_life_loss_cost").get<double>();
  out.penalty = t.at("out_of_limit_penalty").get<double>();
  out.throughput_mwh = t.at("throughput_energy_mwh").get<double>();
  out.out_of_limit_mwh = t.at("out_of_limit_energy_mwh").get<double>();
  return out;
}

const std::vector<double>& Trajectory::at(const std::string& name) const {
  const auto it = columns.find(name);
  if (it == columns.end()) throw std::out_of_range("trajectory has no column '" + name + "'");
  return it->second;
}

Trajectory read_trajectory(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw ParseError(path.string(), 1, "empty file");
  const auto header = split(line);
  if (header.empty() || header[0] != "timestamp") {
    throw ParseError(path.string(), 1, "expected a trajectory header starting with 'timestamp'");
  }
  Trajectory t;
  for (std::size_t i = 1; i < header.size(); ++i) t.columns[header[i]];
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    const auto f = split(line);
    if (f.size() != header.size()) throw ParseError(path.string(), lineno, "wrong field count");
    t.timestamps.push_back(f[0]);
    for (std::size_t i = 1; i < f.size(); ++i) {
      t.columns[header[i]].push_back(to_double(f[i], path, lineno));
    }
  }
  return t;
}

std::vector<double> load_soc_trajectory(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::string first;
  while (std::getline(in, first) && (first.empty() || first[0] == '#')) {
  }
  in.close();
  if (first.rfind("timestamp,value", 0) == 0) {
    std::ifstream again(path);
    std::string l;
    std::getline(again, l);
    // Accept any uniform step: read the step from the first two rows.
    std::vector<double> v;
    std::size_t lineno = 0;
    std::ifstream rd(path);
    while (std::getline(rd, l)) {
      ++lineno;
      if (l.empty() || l[0] == '#' || l.rfind("timestamp", 0) == 0) continue;
      const auto f = split(l);
      if (f.size() != 2) throw ParseError(path.string(), lineno, "expected two fields");
      v.push_back(to_double(f[1], path, lineno));
    }
    return v;
  }
  const Trajectory t = read_trajectory(path);
  std::vector<double> v;
  if (t.size() == 0) return v;
  v.push_back(t.at("S_OC_prev").front());
  const auto& s = t.at("S_OC");
  v.insert(v.end(), s.begin(), s.end());
  return v;
}

std::vector<degradation::CycleSample> load_cycle_samples(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::string line;
  std::size_t lineno = 0;
  bool header = false;
  std::vector<degradation::CycleSample> out;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#' || line == "\r") continue;
    const auto f = split(line);
    if (!header) {
      if (f.size() != 2 || f[0] != "dod" || f[1] != "cycles") {
        throw ParseError(path.string(), lineno, "expected header 'dod,cycles'");
      }
      header = true;
      continue;
    }
    if (f.size() != 2) throw ParseError(path.string(), lineno, "expected two fields");
    out.push_back({to_double(f[0], path, lineno), to_double(f[1], path, lineno)});
  }
  if (!header) throw ParseError(path.string(), lineno, "missing header 'dod,cycles'");
  return out;
}

void write_horizon_solution(const tracking::HorizonSolution& sol,
                            const tracking::HorizonInput& input,
                            const tracking::CostBreakdown& cost,
                            const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  json steps = json::array();
  for (std::size_t t = 0; t < sol.steps.size(); ++t) {
    const auto& s = sol.steps[t];
    steps.push_back({{"step", t},
                     {"v_dis", s.v_dis},
                     {"v_ch", s.v_ch},
                     {"P_dis", s.p_dis},
                     {"P_ch", s.p_ch},
                     {"P_joint", s.p_joint},
                     {"S_OC", s.soc},
                     {"P_out_lower", s.out_lower},
                     {"P_out_upper", s.out_upper},
                     {"L_loss_model", s.loss_model},
                     {"L_loss_exact", s.loss_exact}});
  }
  json j = {{"soc_init", input.soc_init},
            {"objective", sol.objective},
            {"gap", sol.gap},
            {"nodes", sol.nodes},
            {"suboptimal", sol.suboptimal},
            {"bess_cost_model", cost.bess_model},
            {"bess_cost_exact", cost.bess_exact},
            {"penalty", cost.penalty},
            {"total_model", cost.total_model},
            {"total_exact", cost.total_exact},
            {"steps", steps}};
  if (!sol.diagnostic.empty()) j["diagnostic"] = sol.diagnostic;
  {
    const auto p = out_dir / "solution.json";
    auto out = open_out(p);
    out << j.dump(2) << '\n';
    finish(out, p);
  }
  const auto p = out_dir / "solution.csv";
  auto out = open_out(p);
  out << "step,P_sch,P_wind_f,v_dis,v_ch,P_dis,P_ch,P_joint,S_OC,P_out_lower,P_out_upper,"
         "L_loss_model,L_loss_exact\n";
  for (std::size_t t = 0; t < sol.steps.size(); ++t) {
    const auto& s = sol.steps[t];
    out << t << ',' << num(input.p_sch[t]) << ',' << num(input.p_wind_f[t]) << ','
        << (s.v_dis ? 1 : 0) << ',' << (s.v_ch ? 1 : 0) << ',' << num(s.p_dis) << ','
        << num(s.p_ch) << ',' << num(s.p_joint) << ',' << num(s.soc) << ',' << num(s.out_lower)
        << ',' << num(s.out_upper) << ',' << num(s.loss_model) << ',' << num(s.loss_exact)
        << '\n';
  }
  finish(out, p);
}

}  // namespace bess::io
