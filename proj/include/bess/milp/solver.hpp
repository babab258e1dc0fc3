#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "bess/milp/model.hpp"

namespace bess::milp {

struct SolveOptions {
  double feasibility_tol = 1e-7;
  double integrality_tol = 1e-6;
  double absolute_gap = 1e-6;
  double relative_gap = 1e-6;
  std::int64_t node_limit = 2'000'000;
  double time_limit_s = 3600.0;
  // Branch on higher Variable::branch_priority first.
  bool use_branch_priorities = true;

  // Throws std::invalid_argument if any tolerance is not positive.
  void validate() const;
};

enum class SolveStatus { Optimal, Infeasible, Unbounded, LimitReached };

std::string_view to_string(SolveStatus s);

struct MilpSolution {
  SolveStatus status = SolveStatus::Infeasible;
  std::vector<double> values;  // empty when no feasible point is known
  double objective = 0.0;
  double bound = 0.0;  // best proven lower bound
  double gap = 0.0;    // objective - bound, >= 0
  std::int64_t nodes = 0;
  std::int64_t lp_iterations = 0;
  std::string diagnostic;

  bool has_solution() const { return !values.empty(); }
};

// Reference branch and bound: best-bound node selection, LP relaxations by
// the dense bounded-variable simplex, branching on the most fractional
// binary (ties to the lower index, optionally filtered by priority).
MilpSolution solve(const Model& model, const SolveOptions& options = {});

// Pluggable solver seam. Implementations must honor the SolveOptions gaps
// and report the same status vocabulary.
class SolverBackend {
 public:
  virtual ~SolverBackend() = default;
  virtual std::string_view name() const = 0;
  virtual MilpSolution solve(const Model& model, const SolveOptions& options) = 0;
};

class ReferenceBackend final : public SolverBackend {
 public:
  std::string_view name() const override { return "reference"; }
  MilpSolution solve(const Model& model, const SolveOptions& options) override {
    return milp::solve(model, options);
  }
};

// "reference" or "external". Throws std::invalid_argument otherwise.
std::unique_ptr<SolverBackend> make_backend(std::string_view name);

}  // namespace bess::milp
