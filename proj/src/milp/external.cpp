#include "bess/milp/external.hpp"

#include <fcntl.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <json.hpp>
#include <sstream>
#include <stdexcept>

#ifndef BESS_MILP_WORKER_PATH
#define BESS_MILP_WORKER_PATH "tools/milp_worker.py"
#endif

namespace bess::milp {
namespace {

using nlohmann::json;

json bound_json(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

std::string encode_request(const Model& model, const SolveOptions& options) {
  json req;
  json lo = json::array(), hi = json::array(), integer = json::array();
  for (const auto& v : model.variables()) {
    lo.push_back(bound_json(v.lo));
    hi.push_back(bound_json(v.hi));
    integer.push_back(v.type == VarType::Binary ? 1 : 0);
  }
  json cost = json::array();
  std::vector<double> c(model.num_variables(), 0.0);
  for (const auto& t : model.objective()) c[static_cast<std::size_t>(t.var.value)] = t.coef;
  for (double v : c) cost.push_back(v);

  json rows = json::array();
  for (const auto& con : model.constraints()) {
    json idx = json::array(), val = json::array();
    for (const auto& t : con.terms) {
      idx.push_back(t.var.value);
      val.push_back(t.coef);
    }
    double rlo = -INFINITY, rhi = INFINITY;
    if (con.sense != Sense::LessEqual) rlo = con.rhs;
    if (con.sense != Sense::GreaterEqual) rhi = con.rhs;
    rows.push_back({{"idx", idx}, {"val", val}, {"lo", bound_json(rlo)}, {"hi", bound_json(rhi)}});
  }
  req["lo"] = lo;
  req["hi"] = hi;
  req["integer"] = integer;
  req["c"] = cost;
  req["c0"] = model.objective_constant();
  req["rows"] = rows;
  req["options"] = {{"feasibility_tol", options.feasibility_tol},
                    {"absolute_gap", options.absolute_gap},
                    {"relative_gap", options.relative_gap},
                    {"time_limit_s", options.time_limit_s},
                    {"node_limit", options.node_limit}};
  return req.dump();
}

MilpSolution decode_reply(const std::string& line, const Model& model) {
  json rep;
  try {
    rep = json::parse(line);
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("external solver reply is not JSON: ") + e.what());
  }
  MilpSolution out;
  const std::string status = rep.value("status", "");
  if (status == "optimal") {
    out.status = SolveStatus::Optimal;
  } else if (status == "infeasible") {
    out.status = SolveStatus::Infeasible;
  } else if (status == "unbounded") {
    out.status = SolveStatus::Unbounded;
  } else if (status == "limit") {
    out.status = SolveStatus::LimitReached;
  } else {
    throw std::runtime_error("external solver reply has unknown status '" + status + "'");
  }
  if (rep.contains("x") && rep["x"].is_array()) {
    out.values = rep["x"].get<std::vector<double>>();
    if (out.values.size() != model.num_variables()) {
      throw std::runtime_error("external solver returned " + std::to_string(out.values.size()) +
                               " values for " + std::to_string(model.num_variables()) +
                               " variables");
    }
    // Binaries come back as floats; snap them so downstream code sees 0/1.
    for (std::size_t j = 0; j < out.values.size(); ++j) {
      if (model.variables()[j].type == VarType::Binary) out.values[j] = std::round(out.values[j]);
    }
    out.objective = model.objective_value(out.values);
  }
  if (rep.contains("bound") && rep["bound"].is_number()) {
    out.bound = rep["bound"].get<double>();
  } else {
    out.bound = out.objective;
  }
  out.gap = std::max(0.0, out.objective - out.bound);
  out.nodes = rep.value("nodes", std::int64_t{0});
  out.diagnostic = rep.value("message", "");
  return out;
}

class ExternalBackend::Worker {
 public:
  explicit Worker(const std::vector<std::string>& command) {
    int to_child[2];
    int from_child[2];
    if (pipe(to_child) != 0 || pipe(from_child) != 0) {
      throw std::runtime_error(std::string("pipe: ") + std::strerror(errno));
    }
    pid_ = fork();
    if (pid_ < 0) throw std::runtime_error(std::string("fork: ") + std::strerror(errno));
    if (pid_ == 0) {
      dup2(to_child[0], STDIN_FILENO);
      dup2(from_child[1], STDOUT_FILENO);
      close(to_child[0]);
      close(to_child[1]);
      close(from_child[0]);
      close(from_child[1]);
      std::vector<char*> argv;
      for (const auto& s : command) argv.push_back(const_cast<char*>(s.c_str()));
      argv.push_back(nullptr);
      execvp(argv[0], argv.data());
      std::_Exit(127);
    }
    close(to_child[0]);
    close(from_child[1]);
    out_ = fdopen(to_child[1], "w");
    in_ = fdopen(from_child[0], "r");
    if (out_ == nullptr || in_ == nullptr) throw std::runtime_error("fdopen failed");
    signal(SIGPIPE, SIG_IGN);
  }

  ~Worker() {
    if (out_ != nullptr) std::fclose(out_);
    if (in_ != nullptr) std::fclose(in_);
    if (pid_ > 0) {
      int status = 0;
      waitpid(pid_, &status, 0);
    }
  }

  Worker(const Worker&) = delete;
  Worker& operator=(const Worker&) = delete;

  std::string round_trip(const std::string& request) {
    if (std::fputs(request.c_str(), out_) < 0 || std::fputc('\n', out_) == EOF ||
        std::fflush(out_) != 0) {
      throw std::runtime_error("external solver worker closed its input");
    }
    std::string line;
    char buf[65536];
    while (std::fgets(buf, sizeof buf, in_) != nullptr) {
      line += buf;
      if (!line.empty() && line.back() == '\n') {
        line.pop_back();
        return line;
      }
    }
    throw std::runtime_error("external solver worker exited without a reply");
  }

 private:
  pid_t pid_ = -1;
  std::FILE* out_ = nullptr;
  std::FILE* in_ = nullptr;
};

ExternalBackend::ExternalBackend(std::vector<std::string> command)
    : command_(command.empty() ? default_command() : std::move(command)) {}

ExternalBackend::~ExternalBackend() = default;

std::vector<std::string> ExternalBackend::default_command() {
  if (const char* env = std::getenv("BESS_EXTERNAL_SOLVER"); env != nullptr && *env != '\0') {
    std::vector<std::string> parts;
    std::istringstream in(env);
    for (std::string tok; in >> tok;) parts.push_back(tok);
    return parts;
  }
  return {"python3", BESS_MILP_WORKER_PATH};
}

MilpSolution ExternalBackend::solve(const Model& model, const SolveOptions& options) {
  options.validate();
  if (!worker_) worker_ = std::make_unique<Worker>(command_);
  const std::string reply = worker_->round_trip(encode_request(model, options));
  return decode_reply(reply, model);
}

std::unique_ptr<SolverBackend> make_backend(std::string_view name) {
  if (name == "reference") return std::make_unique<ReferenceBackend>();
  if (name == "external") return std::make_unique<ExternalBackend>();
  throw std::invalid_argument("unknown solver backend '" + std::string(name) +
                              "' (expected reference or external)");
}

}  // namespace bess::milp
