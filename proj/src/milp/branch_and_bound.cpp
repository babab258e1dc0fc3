#include <algorithm>
#include <chrono>
#include <cmath>
#include <queue>
#include <sstream>
#include <stdexcept>

#include "bess/milp/simplex.hpp"
#include "bess/milp/solver.hpp"

namespace bess::milp {

void SolveOptions::validate() const {
  if (!(feasibility_tol > 0.0)) throw std::invalid_argument("feasibility tolerance must be positive");
  if (!(integrality_tol > 0.0)) throw std::invalid_argument("integrality tolerance must be positive");
  if (!(absolute_gap > 0.0)) throw std::invalid_argument("absolute gap must be positive");
  if (!(relative_gap > 0.0)) throw std::invalid_argument("relative gap must be positive");
  if (node_limit <= 0) throw std::invalid_argument("node limit must be positive");
  if (!(time_limit_s > 0.0)) throw std::invalid_argument("time limit must be positive");
}

std::string_view to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal:
      return "optimal";
    case SolveStatus::Infeasible:
      return "infeasible";
    case SolveStatus::Unbounded:
      return "unbounded";
    case SolveStatus::LimitReached:
      return "limit_reached";
  }
  return "unknown";
}

namespace {

// Fixing state of each binary at a node: -1 free, 0 or 1 fixed.
struct Node {
  double bound = 0.0;
  int depth = 0;
  std::int64_t id = 0;
  std::vector<signed char> fix;
};

struct NodeOrder {
  // Priority queue puts the "largest" on top; we want the lowest bound, then
  // the deepest node, then the oldest.
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    if (a.depth != b.depth) return a.depth < b.depth;
    return a.id > b.id;
  }
};

class BranchAndBound {
 public:
  BranchAndBound(const Model& model, const SolveOptions& opt)
      : model_(model), opt_(opt), lp_(model), ws_(lp_) {
    for (std::size_t j = 0; j < model.num_variables(); ++j) {
      const Variable& v = model.variables()[j];
      root_lo_.push_back(v.lo);
      root_hi_.push_back(v.hi);
      if (v.type == VarType::Binary) binaries_.push_back(j);
    }
    lp_opt_.feasibility_tol = opt.feasibility_tol;
  }

  MilpSolution run() {
    const auto t0 = std::chrono::steady_clock::now();
    MilpSolution out;

    Node root;
    root.fix.assign(binaries_.size(), -1);
    root.bound = -kInf;
    open_.push(root);

    bool limit_hit = false;
    bool numerical_trouble = false;
    std::ostringstream diag;

    while (!open_.empty()) {
      if (stop_gap_reached()) break;
      if (nodes_ >= opt_.node_limit) {
        limit_hit = true;
        diag << "node limit " << opt_.node_limit << " reached; ";
        break;
      }
      const double elapsed =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      if (elapsed > opt_.time_limit_s) {
        limit_hit = true;
        diag << "time limit " << opt_.time_limit_s << " s reached; ";
        break;
      }

      Node node = open_.top();
      open_.pop();
      if (has_incumbent_ && node.bound >= incumbent_obj_ - prune_margin()) continue;
      ++nodes_;

      const LpResult lp = solve_node(node.fix);
      if (lp.status == LpStatus::Infeasible) continue;
      if (lp.status == LpStatus::Unbounded) {
        if (nodes_ == 1) {
          out.status = SolveStatus::Unbounded;
          out.nodes = nodes_;
          out.lp_iterations = lp_iterations_;
          out.diagnostic = "LP relaxation unbounded at the root";
          return out;
        }
        numerical_trouble = true;
        diag << "unbounded LP below the root at node " << nodes_ << "; ";
        continue;
      }
      if (lp.status == LpStatus::IterationLimit) {
        numerical_trouble = true;
        diag << "LP iteration limit at node " << nodes_ << "; ";
        continue;
      }
      if (has_incumbent_ && lp.objective >= incumbent_obj_ - prune_margin()) continue;

      const long branch = choose_branch(lp.x);
      if (branch < 0) {
        accept_integral(node.fix, lp);
        continue;
      }
      for (signed char value : {static_cast<signed char>(0), static_cast<signed char>(1)}) {
        Node child;
        child.bound = std::max(node.bound, lp.objective);
        child.depth = node.depth + 1;
        child.id = next_id_++;
        child.fix = node.fix;
        child.fix[static_cast<std::size_t>(branch)] = value;
        open_.push(std::move(child));
      }
    }

    out.nodes = nodes_;
    out.lp_iterations = lp_iterations_;
    const double open_bound = open_.empty() ? kInf : open_.top().bound;
    if (!has_incumbent_) {
      if (limit_hit || numerical_trouble) {
        out.status = SolveStatus::LimitReached;
        out.diagnostic = diag.str() + "no feasible solution found";
      } else {
        out.status = SolveStatus::Infeasible;
      }
      out.bound = open_bound;
      return out;
    }
    out.values = incumbent_;
    out.objective = incumbent_obj_;
    out.bound = std::min(open_bound, incumbent_obj_);
    out.gap = std::max(0.0, incumbent_obj_ - out.bound);
    const bool proven = out.gap <= gap_threshold() || open_.empty();
    if (limit_hit && !proven) {
      out.status = SolveStatus::LimitReached;
    } else if (numerical_trouble) {
      out.status = SolveStatus::LimitReached;
    } else {
      out.status = SolveStatus::Optimal;
    }
    out.diagnostic = diag.str();
    return out;
  }

 private:
  double gap_threshold() const {
    return std::max(opt_.absolute_gap, opt_.relative_gap * std::abs(incumbent_obj_));
  }
  double prune_margin() const { return gap_threshold(); }

  bool stop_gap_reached() const {
    if (!has_incumbent_ || open_.empty()) return false;
    return incumbent_obj_ - open_.top().bound <= gap_threshold();
  }

  LpResult solve_node(const std::vector<signed char>& fix, bool cold = false) {
    lo_ = root_lo_;
    hi_ = root_hi_;
    for (std::size_t k = 0; k < binaries_.size(); ++k) {
      if (fix[k] < 0) continue;
      const std::size_t j = binaries_[k];
      lo_[j] = hi_[j] = static_cast<double>(fix[k]);
    }
    LpResult r = cold ? lp_.solve(lo_, hi_, lp_opt_) : ws_.solve(lo_, hi_, lp_opt_);
    lp_iterations_ += r.iterations;
    return r;
  }

  long choose_branch(const std::vector<double>& x) const {
    long best = -1;
    double best_frac = 0.0;
    int best_prio = 0;
    for (std::size_t k = 0; k < binaries_.size(); ++k) {
      const std::size_t j = binaries_[k];
      const double frac = std::min(x[j], 1.0 - x[j]);
      if (frac <= opt_.integrality_tol) continue;
      const int prio = opt_.use_branch_priorities ? model_.variables()[j].branch_priority : 0;
      if (best < 0 || prio > best_prio || (prio == best_prio && frac > best_frac)) {
        best = static_cast<long>(k);
        best_frac = frac;
        best_prio = prio;
      }
    }
    return best;
  }

  // The LP point is integral within tolerance; re-solve with binaries rounded
  // and fixed so the stored incumbent is exactly integral and LP-feasible.
  void accept_integral(const std::vector<signed char>& fix, const LpResult& lp) {
    std::vector<signed char> rounded = fix;
    for (std::size_t k = 0; k < binaries_.size(); ++k) {
      rounded[k] = lp.x[binaries_[k]] > 0.5 ? 1 : 0;
    }
    // Cold, so the stored point does not depend on the warm basis history.
    LpResult clean = solve_node(rounded, true);
    const LpResult& use = clean.status == LpStatus::Optimal ? clean : lp;
    if (has_incumbent_ && use.objective >= incumbent_obj_) return;
    incumbent_ = use.x;
    if (&use == &lp) {
      for (std::size_t k = 0; k < binaries_.size(); ++k) {
        incumbent_[binaries_[k]] = rounded[k];
      }
    }
    incumbent_obj_ = use.objective;
    has_incumbent_ = true;
  }

  const Model& model_;
  const SolveOptions& opt_;
  DenseLp lp_;
  LpWorkspace ws_;
  LpOptions lp_opt_;
  std::vector<double> root_lo_;
  std::vector<double> root_hi_;
  std::vector<double> lo_;
  std::vector<double> hi_;
  std::vector<std::size_t> binaries_;
  std::priority_queue<Node, std::vector<Node>, NodeOrder> open_;
  std::vector<double> incumbent_;
  double incumbent_obj_ = kInf;
  bool has_incumbent_ = false;
  std::int64_t nodes_ = 0;
  std::int64_t next_id_ = 1;
  std::int64_t lp_iterations_ = 0;
};

}  // namespace

MilpSolution solve(const Model& model, const SolveOptions& options) {
  options.validate();
  BranchAndBound bnb(model, options);
  return bnb.run();
}

}  // namespace bess::milp
