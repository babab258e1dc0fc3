#pragma once

#include <memory>
#include <span>
#include <vector>

#include "bess/milp/model.hpp"

namespace bess::milp {

struct LpOptions {
  double feasibility_tol = 1e-7;
  double optimality_tol = 1e-9;
  double pivot_tol = 1e-9;
  long iteration_limit = 50000;
  // Consecutive degenerate pivots before switching to Bland's rule.
  int bland_after = 40;
};

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  std::vector<double> x;  // structural values, meaningful when Optimal
  double objective = 0.0;
  long iterations = 0;
};

// Row-scaled dense copy of a model's constraint matrix and objective. The
// LP relaxation can then be re-solved cheaply under different variable
// bounds, which is what branch and bound needs.
//
// Each row i becomes a_i x - s_i = 0 with a bounded logical s_i, so every
// variable (structural or logical) is a bounded variable and the all-logical
// basis is always available as a starting point. solve() runs a dense
// tableau bounded-variable primal simplex: phase 1 minimizes the sum of
// bound infeasibilities of basic variables, phase 2 the objective. Pricing
// is Dantzig with a Harris two-pass ratio test, falling back to Bland's rule
// after a run of degenerate pivots.
class DenseLp {
 public:
  explicit DenseLp(const Model& model);

  LpResult solve(std::span<const double> lo, std::span<const double> hi,
                 const LpOptions& options = {}) const;

  std::size_t rows() const { return m_; }
  std::size_t cols() const { return n_; }

 private:
  friend class Tableau;
  friend class LpWorkspace;

  std::size_t m_ = 0;
  std::size_t n_ = 0;
  std::vector<double> a_;  // m x n, row major, scaled
  std::vector<double> row_lo_;
  std::vector<double> row_hi_;
  std::vector<double> cost_;
  double cost_constant_ = 0.0;
};

class Tableau;

// Keeps the tableau of the last solve so the next one, under different
// bounds, can restart from its basis with a dual simplex phase instead of
// from the slack basis. Branch and bound changes a few bounds per node, so
// this usually takes a handful of pivots. The tableau is rebuilt from the
// original matrix every kRefreshEvery warm solves to shed rounding drift.
class LpWorkspace {
 public:
  static constexpr int kRefreshEvery = 64;

  explicit LpWorkspace(const DenseLp& lp);
  ~LpWorkspace();
  LpWorkspace(const LpWorkspace&) = delete;
  LpWorkspace& operator=(const LpWorkspace&) = delete;

  LpResult solve(std::span<const double> lo, std::span<const double> hi,
                 const LpOptions& options = {});

  // Warm solves finished by the dual phase without primal repair.
  long warm_hits() const { return warm_hits_; }

 private:
  const DenseLp& lp_;
  std::unique_ptr<Tableau> tab_;
  bool reusable_ = false;
  long warm_solves_ = 0;
  long warm_hits_ = 0;
};

// Solves the LP relaxation of the model under its own bounds.
LpResult solve_lp(const Model& model, const LpOptions& options = {});

}  // namespace bess::milp
