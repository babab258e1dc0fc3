#pragma once

#include <memory>
#include <string>
#include <vector>

#include "bess/milp/solver.hpp"

namespace bess::milp {

// Solves models in a separate worker process speaking newline-delimited
// JSON on stdin/stdout: one request object per model, one reply per request.
// The default worker (tools/milp_worker.py) wraps scipy.optimize.milp.
// The worker is started lazily and kept alive across solves.
class ExternalBackend final : public SolverBackend {
 public:
  // Empty command selects $BESS_EXTERNAL_SOLVER, then the bundled worker.
  explicit ExternalBackend(std::vector<std::string> command = {});
  ~ExternalBackend() override;

  ExternalBackend(const ExternalBackend&) = delete;
  ExternalBackend& operator=(const ExternalBackend&) = delete;

  std::string_view name() const override { return "external"; }
  MilpSolution solve(const Model& model, const SolveOptions& options) override;

  static std::vector<std::string> default_command();

 private:
  class Worker;
  std::vector<std::string> command_;
  std::unique_ptr<Worker> worker_;
};

// Request payload sent to the worker (exposed for tests).
std::string encode_request(const Model& model, const SolveOptions& options);
// Parses a worker reply; throws std::runtime_error on malformed input.
MilpSolution decode_reply(const std::string& line, const Model& model);

}  // namespace bess::milp
