#include "bess/milp/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <span>

#include "bess/simd/kernels.hpp"

namespace bess::milp {

DenseLp::DenseLp(const Model& model)
    : m_(model.num_constraints()), n_(model.num_variables()) {
  a_.assign(m_ * n_, 0.0);
  row_lo_.resize(m_);
  row_hi_.resize(m_);
  for (std::size_t i = 0; i < m_; ++i) {
    const Constraint& c = model.constraints()[i];
    double big = 0.0;
    for (const auto& t : c.terms) big = std::max(big, std::abs(t.coef));
    const double s = big > 0.0 ? 1.0 / big : 1.0;
    for (const auto& t : c.terms) a_[i * n_ + static_cast<std::size_t>(t.var.value)] = t.coef * s;
    const double rhs = c.rhs * s;
    switch (c.sense) {
      case Sense::LessEqual:
        row_lo_[i] = -kInf;
        row_hi_[i] = rhs;
        break;
      case Sense::GreaterEqual:
        row_lo_[i] = rhs;
        row_hi_[i] = kInf;
        break;
      case Sense::Equal:
        row_lo_[i] = rhs;
        row_hi_[i] = rhs;
        break;
    }
  }
  cost_.assign(n_, 0.0);
  for (const auto& t : model.objective()) cost_[static_cast<std::size_t>(t.var.value)] = t.coef;
  cost_constant_ = model.objective_constant();
}

namespace {

enum class ColState : unsigned char { Basic, AtLower, AtUpper, Free };

constexpr int kRecomputeEvery = 64;
constexpr int kMaxReinversions = 4;
constexpr int kMaxCleanups = 3;

}  // namespace

// Working state of one LP solve. Columns [0, n) are structurals, [n, n + m)
// the row logicals. Row i of the tableau expresses basic variable basis_[i]
// as x_B(i) = -sum_{j nonbasic} T(i, j) x_j.
class Tableau {
 public:
  Tableau(const DenseLp& lp, std::span<const double> lo, std::span<const double> hi,
          const LpOptions& opt)
      : lp_(lp), opt_(opt), m_(lp.m_), n_(lp.n_), cols_(lp.n_ + lp.m_) {
    stride_ = (cols_ + 3) & ~std::size_t{3};
    lo_.resize(cols_);
    hi_.resize(cols_);
    for (std::size_t j = 0; j < n_; ++j) {
      lo_[j] = lo[j];
      hi_[j] = hi[j];
    }
    for (std::size_t i = 0; i < m_; ++i) {
      lo_[n_ + i] = lp.row_lo_[i];
      hi_[n_ + i] = lp.row_hi_[i];
    }
    cost_.assign(stride_, 0.0);
    std::copy(lp.cost_.begin(), lp.cost_.end(), cost_.begin());
    d_.assign(stride_, 0.0);
    x_.assign(cols_, 0.0);
    state_.assign(cols_, ColState::AtLower);
    for (std::size_t j = 0; j < n_; ++j) place_at_bound(j);
    build_identity_basis();
    recompute_basics();
  }

  void set_options(const LpOptions& opt) { opt_ = opt; }

  // New structural bounds on an existing basis. Nonbasics move to the bound
  // their state names; basics are recomputed and may become infeasible.
  void reset_bounds(std::span<const double> lo, std::span<const double> hi) {
    for (std::size_t j = 0; j < n_; ++j) {
      lo_[j] = lo[j];
      hi_[j] = hi[j];
    }
    for (std::size_t j = 0; j < cols_; ++j) {
      const ColState s = state_[j];
      if (s == ColState::Basic) continue;
      if (s == ColState::AtLower && std::isfinite(lo_[j])) {
        x_[j] = lo_[j];
      } else if (s == ColState::AtUpper && std::isfinite(hi_[j])) {
        x_[j] = hi_[j];
      } else {
        place_at_bound(j);
      }
    }
    recompute_basics();
  }

  enum class DualOutcome { Feasible, Infeasible, NeedPrimal };

  // Bounded dual simplex from a dual feasible basis: repeatedly drive the
  // most infeasible basic onto its violated bound. Anything unexpected hands
  // over to the primal loop, which also certifies the final answer.
  DualOutcome dual_phase(long& iterations) {
    compute_phase2_costs();
    const double dtol = 10.0 * opt_.optimality_tol;
    // A boxed nonbasic on the wrong side for its reduced cost (typically a
    // binary fixed at the previous node) is moved to the other bound.
    // Decide before touching anything: an early exit must leave x_ consistent.
    std::vector<std::size_t> flips;
    for (std::size_t j = 0; j < cols_; ++j) {
      const ColState s = state_[j];
      if (s == ColState::Basic || lo_[j] == hi_[j]) continue;
      const bool wrong = ((s == ColState::AtLower || s == ColState::Free) && d_[j] < -dtol) ||
                         ((s == ColState::AtUpper || s == ColState::Free) && d_[j] > dtol);
      if (!wrong) continue;
      if (!std::isfinite(lo_[j]) || !std::isfinite(hi_[j])) return DualOutcome::NeedPrimal;
      flips.push_back(j);
    }
    const bool moved = !flips.empty();
    for (std::size_t j : flips) {
      const bool up = d_[j] < 0.0;
      state_[j] = up ? ColState::AtUpper : ColState::AtLower;
      x_[j] = up ? hi_[j] : lo_[j];
    }
    if (moved) recompute_basics();
    const double ftol = opt_.feasibility_tol;
    const double ptol = opt_.pivot_tol;
    const long cap = static_cast<long>(2 * (m_ + n_));
    int since_recompute = 0;
    for (long it = 0; it < cap; ++it) {
      if (++since_recompute >= kRecomputeEvery) {
        recompute_basics();
        since_recompute = 0;
      }
      std::size_t r = m_;
      double worst = ftol;
      for (std::size_t i = 0; i < m_; ++i) {
        const double v = infeasibility(basis_[i]);
        if (v > worst) {
          worst = v;
          r = i;
        }
      }
      if (r == m_) return DualOutcome::Feasible;

      const std::size_t b = basis_[r];
      const bool to_lower = x_[b] < lo_[b];
      const double target = to_lower ? lo_[b] : hi_[b];
      const double s = to_lower ? 1.0 : -1.0;
      const double* tr = row(r);

      // Candidate j can move x_b toward the target; its dual "room" is the
      // reduced cost on the side its bound state allows.
      auto room = [&](std::size_t j, double& dd) -> bool {
        const ColState st = state_[j];
        if (st == ColState::Basic || lo_[j] == hi_[j]) return false;
        const double t = tr[j];
        if (std::abs(t) <= ptol) return false;
        if (st == ColState::AtLower) {
          if (s * t >= 0.0) return false;
          dd = std::max(d_[j], 0.0);
        } else if (st == ColState::AtUpper) {
          if (s * t <= 0.0) return false;
          dd = std::max(-d_[j], 0.0);
        } else {
          dd = std::abs(d_[j]);
        }
        return true;
      };
      double theta_max = kInf;
      for (std::size_t j = 0; j < cols_; ++j) {
        double dd = 0.0;
        if (room(j, dd)) theta_max = std::min(theta_max, (dd + dtol) / std::abs(tr[j]));
      }
      if (!std::isfinite(theta_max)) {
        // No column can repair row r. Trust that only for a clear violation.
        if (worst > 1e3 * ftol) return DualOutcome::Infeasible;
        return DualOutcome::NeedPrimal;
      }
      std::size_t q = cols_;
      double best_pivot = 0.0;
      for (std::size_t j = 0; j < cols_; ++j) {
        double dd = 0.0;
        if (!room(j, dd)) continue;
        if (dd / std::abs(tr[j]) <= theta_max && std::abs(tr[j]) > best_pivot) {
          best_pivot = std::abs(tr[j]);
          q = j;
        }
      }
      if (q == cols_) return DualOutcome::NeedPrimal;

      const double t = (target - x_[b]) / -tr[q];
      x_[q] += t;
      for (std::size_t i = 0; i < m_; ++i) {
        const double tq = row(i)[q];
        if (tq != 0.0 && i != r) x_[basis_[i]] -= tq * t;
      }
      x_[b] = target;
      state_[b] = to_lower ? ColState::AtLower : ColState::AtUpper;
      pivot(r, q);
      ++iterations;
    }
    return DualOutcome::NeedPrimal;
  }

  // Rebuilds the tableau of the current basis from the original matrix.
  void refresh() {
    reinvert();
    recompute_basics();
  }

  LpResult run() {
    LpResult out;
    int reinversions = 0;
    int cleanups = 0;
    int degenerate_run = 0;
    int since_recompute = 0;
    int phase = 0;  // 0 forces a phase decision on the first iteration

    for (long iter = 0;; ++iter) {
      if (iter >= opt_.iteration_limit) {
        out.status = LpStatus::IterationLimit;
        out.iterations = iter;
        return out;
      }
      if (++since_recompute >= kRecomputeEvery) {
        recompute_basics();
        since_recompute = 0;
        if (phase == 2) compute_phase2_costs();
      }

      const bool infeasible = any_infeasible();
      if (infeasible) {
        phase = 1;
        compute_phase1_costs();
      } else if (phase != 2) {
        phase = 2;
        compute_phase2_costs();
      }

      const bool bland = degenerate_run >= opt_.bland_after;
      int dir = 0;
      const long q = choose_entering(bland, dir);
      if (q < 0) {
        // No improving column. Confirm with fresh values before concluding.
        recompute_basics();
        since_recompute = 0;
        if (phase == 1) {
          if (any_infeasible()) {
            // The refreshed values may price differently.
            compute_phase1_costs();
            int dir2 = 0;
            if (choose_entering(bland, dir2) >= 0) continue;
            out.status = LpStatus::Infeasible;
            out.iterations = iter;
            return out;
          }
          continue;
        }
        if (any_infeasible()) continue;
        // Nonbasics may sit a hair off their bounds after clamped Harris
        // steps. Put them back and re-verify a few times before giving up.
        if (cleanups < kMaxCleanups && snap_nonbasics()) {
          ++cleanups;
          recompute_basics();
          phase = 0;
          continue;
        }
        if (residual_too_large() && reinversions < kMaxReinversions) {
          ++reinversions;
          reinvert();
          recompute_basics();
          phase = 0;
          continue;
        }
        out.status = LpStatus::Optimal;
        out.iterations = iter;
        out.x.assign(x_.begin(), x_.begin() + static_cast<std::ptrdiff_t>(n_));
        clamp_to_bounds(out.x);
        double z = lp_.cost_constant_;
        for (std::size_t j = 0; j < n_; ++j) z += lp_.cost_[j] * out.x[j];
        out.objective = z;
        return out;
      }

      const Step step = ratio_test(static_cast<std::size_t>(q), dir, phase, bland);
      if (step.kind == StepKind::Unbounded) {
        if (phase == 2) {
          out.status = LpStatus::Unbounded;
          out.iterations = iter;
          return out;
        }
        // Phase 1 direction without a breakpoint can only come from pivot
        // entries below tolerance; refresh and retry with Bland's rule.
        recompute_basics();
        degenerate_run = opt_.bland_after;
        if (bland) {
          out.status = LpStatus::IterationLimit;
          out.iterations = iter;
          return out;
        }
        continue;
      }
      apply_step(static_cast<std::size_t>(q), dir, step);
      if (step.theta <= 1e-12) {
        ++degenerate_run;
      } else {
        degenerate_run = 0;
      }
    }
  }

 private:
  enum class StepKind { Pivot, Flip, Unbounded };
  struct Step {
    StepKind kind = StepKind::Unbounded;
    double theta = 0.0;
    std::size_t row = 0;
    bool leave_at_upper = false;
  };

  double* row(std::size_t i) { return t_.data() + i * stride_; }
  const double* row(std::size_t i) const { return t_.data() + i * stride_; }

  void place_at_bound(std::size_t j) {
    if (std::isfinite(lo_[j])) {
      x_[j] = lo_[j];
      state_[j] = ColState::AtLower;
    } else if (std::isfinite(hi_[j])) {
      x_[j] = hi_[j];
      state_[j] = ColState::AtUpper;
    } else {
      x_[j] = 0.0;
      state_[j] = ColState::Free;
    }
  }

  // T = [-A | I], all logicals basic.
  void build_identity_basis() {
    t_.assign(m_ * stride_, 0.0);
    basis_.resize(m_);
    for (std::size_t i = 0; i < m_; ++i) {
      double* r = row(i);
      const double* a = lp_.a_.data() + i * n_;
      for (std::size_t j = 0; j < n_; ++j) r[j] = -a[j];
      r[n_ + i] = 1.0;
      basis_[i] = n_ + i;
      state_[n_ + i] = ColState::Basic;
    }
  }

  void recompute_basics() {
    nonbasic_x_.assign(stride_, 0.0);
    for (std::size_t j = 0; j < cols_; ++j) {
      if (state_[j] != ColState::Basic) nonbasic_x_[j] = x_[j];
    }
    for (std::size_t i = 0; i < m_; ++i) {
      x_[basis_[i]] = -simd::dot(std::span<const double>(row(i), stride_), nonbasic_x_);
    }
  }

  double infeasibility(std::size_t j) const {
    if (x_[j] < lo_[j] - opt_.feasibility_tol) return lo_[j] - x_[j];
    if (x_[j] > hi_[j] + opt_.feasibility_tol) return x_[j] - hi_[j];
    return 0.0;
  }

  bool any_infeasible() const {
    for (std::size_t i = 0; i < m_; ++i) {
      if (infeasibility(basis_[i]) > 0.0) return true;
    }
    return false;
  }

  // Gradient of the sum of infeasibilities w.r.t. nonbasic columns:
  // d1 = -sum_i g_i T_i with g_i = -1 below lower, +1 above upper.
  void compute_phase1_costs() {
    std::fill(d_.begin(), d_.end(), 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
      const std::size_t b = basis_[i];
      double g = 0.0;
      if (x_[b] < lo_[b] - opt_.feasibility_tol) g = -1.0;
      if (x_[b] > hi_[b] + opt_.feasibility_tol) g = 1.0;
      if (g != 0.0) simd::axpy(-g, std::span<const double>(row(i), stride_), d_);
    }
    // Signs: moving nonbasic j by +1 moves x_B(i) by -T(i, j), so the
    // infeasibility sum changes by sum_i g_i (-T(i, j)) = d1_j.
    for (std::size_t i = 0; i < m_; ++i) d_[basis_[i]] = 0.0;
  }

  void compute_phase2_costs() {
    std::copy(cost_.begin(), cost_.end(), d_.begin());
    for (std::size_t i = 0; i < m_; ++i) {
      const double cb = cost_[basis_[i]];
      if (cb != 0.0) simd::axpy(-cb, std::span<const double>(row(i), stride_), d_);
    }
    for (std::size_t i = 0; i < m_; ++i) d_[basis_[i]] = 0.0;
  }

  long choose_entering(bool bland, int& dir) const {
    long best = -1;
    double best_score = 0.0;
    const double tol = opt_.optimality_tol;
    for (std::size_t j = 0; j < cols_; ++j) {
      const ColState s = state_[j];
      if (s == ColState::Basic) continue;
      if (lo_[j] == hi_[j]) continue;
      const double dj = d_[j];
      int cand = 0;
      if ((s == ColState::AtLower || s == ColState::Free) && dj < -tol) cand = +1;
      if ((s == ColState::AtUpper || s == ColState::Free) && dj > tol) cand = -1;
      if (cand == 0) continue;
      if (bland) {
        dir = cand;
        return static_cast<long>(j);
      }
      const double score = std::abs(dj);
      if (score > best_score) {
        best_score = score;
        best = static_cast<long>(j);
        dir = cand;
      }
    }
    return best;
  }

  Step ratio_test(std::size_t q, int dir, int phase, bool bland) const {
    const double ftol = opt_.feasibility_tol;
    const double ptol = opt_.pivot_tol;

    // Limit for each row: (relaxed ratio, exact ratio, leaves at upper).
    struct Limit {
      double relaxed;
      double exact;
      bool upper;
    };
    auto limit_for = [&](std::size_t i, double rate, Limit& lim) -> bool {
      const std::size_t b = basis_[i];
      const double v = x_[b];
      const bool below = phase == 1 && v < lo_[b] - ftol;
      const bool above = phase == 1 && v > hi_[b] + ftol;
      if (rate > 0.0) {
        if (below) {
          lim = {(lo_[b] - v + ftol) / rate, (lo_[b] - v) / rate, false};
          return true;
        }
        if (above || !std::isfinite(hi_[b])) return false;
        lim = {(hi_[b] - v + ftol) / rate, (hi_[b] - v) / rate, true};
        return true;
      }
      if (above) {
        lim = {(v - hi_[b] + ftol) / -rate, (v - hi_[b]) / -rate, true};
        return true;
      }
      if (below || !std::isfinite(lo_[b])) return false;
      lim = {(v - lo_[b] + ftol) / -rate, (v - lo_[b]) / -rate, false};
      return true;
    };

    // Distance to the opposite bound; inf for half-bounded or free columns.
    const double flip = std::max(0.0, dir > 0 ? hi_[q] - x_[q] : x_[q] - lo_[q]);
    Step step;

    if (bland) {
      double best = kInf;
      for (std::size_t i = 0; i < m_; ++i) {
        const double tq = row(i)[q];
        if (std::abs(tq) <= ptol) continue;
        Limit lim{};
        if (!limit_for(i, -tq * dir, lim)) continue;
        const double r = std::max(lim.exact, 0.0);
        const bool better = r < best - 1e-12;
        const bool tie = !better && r <= best + 1e-12 && basis_[i] < basis_[step.row];
        if (better || tie) {
          best = std::min(best, r);
          step = {StepKind::Pivot, r, i, lim.upper};
        }
      }
      if (flip <= best) return {StepKind::Flip, flip, 0, false};
      return step;
    }

    double theta_max = kInf;
    for (std::size_t i = 0; i < m_; ++i) {
      const double tq = row(i)[q];
      if (std::abs(tq) <= ptol) continue;
      Limit lim{};
      if (limit_for(i, -tq * dir, lim)) theta_max = std::min(theta_max, lim.relaxed);
    }
    if (!std::isfinite(theta_max)) {
      if (std::isfinite(flip)) return {StepKind::Flip, flip, 0, false};
      return step;
    }
    double best_pivot = 0.0;
    for (std::size_t i = 0; i < m_; ++i) {
      const double tq = row(i)[q];
      if (std::abs(tq) <= ptol) continue;
      Limit lim{};
      if (!limit_for(i, -tq * dir, lim)) continue;
      if (lim.exact <= theta_max && std::abs(tq) > best_pivot) {
        best_pivot = std::abs(tq);
        step = {StepKind::Pivot, std::max(lim.exact, 0.0), i, lim.upper};
      }
    }
    if (flip <= step.theta) return {StepKind::Flip, flip, 0, false};
    return step;
  }

  void apply_step(std::size_t q, int dir, const Step& step) {
    const double delta = dir * step.theta;
    if (delta != 0.0) {
      x_[q] += delta;
      for (std::size_t i = 0; i < m_; ++i) {
        const double tq = row(i)[q];
        if (tq != 0.0) x_[basis_[i]] -= tq * delta;
      }
    }
    if (step.kind == StepKind::Flip) {
      state_[q] = dir > 0 ? ColState::AtUpper : ColState::AtLower;
      return;
    }
    // The leaving variable keeps its updated value, which may be off its
    // bound by up to the feasibility tolerance. Snapping it here would shift
    // every basic through the tableau; snap_nonbasics does that once at the end.
    const std::size_t r = step.row;
    const std::size_t leaving = basis_[r];
    state_[leaving] = step.leave_at_upper ? ColState::AtUpper : ColState::AtLower;
    pivot(r, q);
  }

  void pivot(std::size_t r, std::size_t q) {
    double* pr = row(r);
    simd::scale(1.0 / pr[q], std::span<double>(pr, stride_));
    pr[q] = 1.0;
    const std::span<const double> prow(pr, stride_);
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r) continue;
      double* ri = row(i);
      const double f = ri[q];
      if (f == 0.0) continue;
      simd::axpy(-f, prow, std::span<double>(ri, stride_));
      ri[q] = 0.0;
    }
    const double dq = d_[q];
    if (dq != 0.0) simd::axpy(-dq, prow, d_);
    d_[q] = 0.0;
    basis_[r] = q;
    state_[q] = ColState::Basic;
  }

  // Row activities recomputed from the unscaled-by-tableau original matrix,
  // compared with the logical values the tableau carries.
  bool residual_too_large() const {
    for (std::size_t i = 0; i < m_; ++i) {
      const double* a = lp_.a_.data() + i * n_;
      double act = 0.0;
      for (std::size_t j = 0; j < n_; ++j) act += a[j] * x_[j];
      if (std::abs(act - x_[n_ + i]) > 10.0 * opt_.feasibility_tol) return true;
    }
    return false;
  }

  // Rebuilds the tableau for the current basis from the original matrix.
  void reinvert() {
    const std::vector<std::size_t> target = basis_;
    const std::vector<ColState> saved_state = state_;
    const std::vector<double> saved_x = x_;
    std::vector<char> wanted(cols_, 0);
    for (std::size_t b : target) wanted[b] = 1;
    build_identity_basis();
    for (std::size_t q : target) {
      if (q >= n_) continue;
      std::size_t best_row = m_;
      double best = 1e-11;
      for (std::size_t i = 0; i < m_; ++i) {
        const std::size_t b = basis_[i];
        if (b < n_ || wanted[b]) continue;
        if (std::abs(row(i)[q]) > best) {
          best = std::abs(row(i)[q]);
          best_row = i;
        }
      }
      if (best_row == m_) continue;  // singular: q ends up nonbasic
      pivot(best_row, q);
    }
    std::vector<char> basic(cols_, 0);
    for (std::size_t b : basis_) basic[b] = 1;
    for (std::size_t j = 0; j < cols_; ++j) {
      if (basic[j]) continue;
      if (saved_state[j] != ColState::Basic) {
        state_[j] = saved_state[j];
        x_[j] = saved_x[j];
      } else {
        place_at_bound(j);
      }
    }
  }

  // Moves nonbasic columns exactly onto their bounds. True if any moved.
  bool snap_nonbasics() {
    bool moved = false;
    for (std::size_t j = 0; j < cols_; ++j) {
      double target;
      if (state_[j] == ColState::AtLower) {
        target = lo_[j];
      } else if (state_[j] == ColState::AtUpper) {
        target = hi_[j];
      } else {
        continue;
      }
      if (x_[j] != target) {
        x_[j] = target;
        moved = true;
      }
    }
    return moved;
  }

  void clamp_to_bounds(std::vector<double>& x) const {
    for (std::size_t j = 0; j < x.size(); ++j) x[j] = std::clamp(x[j], lo_[j], hi_[j]);
  }

  const DenseLp& lp_;
  LpOptions opt_;
  std::size_t m_;
  std::size_t n_;
  std::size_t cols_;
  std::size_t stride_ = 0;
  std::vector<double> t_;
  std::vector<double> d_;
  std::vector<double> cost_;
  std::vector<double> x_;
  std::vector<double> nonbasic_x_;
  std::vector<double> lo_;
  std::vector<double> hi_;
  std::vector<ColState> state_;
  std::vector<std::size_t> basis_;
};

LpResult DenseLp::solve(std::span<const double> lo, std::span<const double> hi,
                        const LpOptions& options) const {
  for (std::size_t j = 0; j < n_; ++j) {
    if (lo[j] > hi[j]) return LpResult{LpStatus::Infeasible, {}, 0.0, 0};
  }
  Tableau tab(*this, lo, hi, options);
  return tab.run();
}

LpWorkspace::LpWorkspace(const DenseLp& lp) : lp_(lp) {}
LpWorkspace::~LpWorkspace() = default;

LpResult LpWorkspace::solve(std::span<const double> lo, std::span<const double> hi,
                            const LpOptions& options) {
  for (std::size_t j = 0; j < lp_.cols(); ++j) {
    if (lo[j] > hi[j]) return LpResult{LpStatus::Infeasible, {}, 0.0, 0};
  }
  if (!tab_ || !reusable_) {
    tab_ = std::make_unique<Tableau>(lp_, lo, hi, options);
    warm_solves_ = 0;
    LpResult r = tab_->run();
    reusable_ = r.status != LpStatus::IterationLimit;
    return r;
  }
  tab_->set_options(options);
  if (++warm_solves_ % kRefreshEvery == 0) tab_->refresh();
  tab_->reset_bounds(lo, hi);
  long dual_iters = 0;
  const auto outcome = tab_->dual_phase(dual_iters);
  if (outcome == Tableau::DualOutcome::Infeasible) {
    ++warm_hits_;
    return LpResult{LpStatus::Infeasible, {}, 0.0, dual_iters};
  }
  LpResult r = tab_->run();
  r.iterations += dual_iters;
  if (outcome == Tableau::DualOutcome::Feasible) ++warm_hits_;
  reusable_ = r.status != LpStatus::IterationLimit;
  return r;
}

LpResult solve_lp(const Model& model, const LpOptions& options) {
  DenseLp lp(model);
  std::vector<double> lo(model.num_variables());
  std::vector<double> hi(model.num_variables());
  for (std::size_t j = 0; j < lo.size(); ++j) {
    lo[j] = model.variables()[j].lo;
    hi[j] = model.variables()[j].hi;
  }
  return lp.solve(lo, hi, options);
}

}  // namespace bess::milp
