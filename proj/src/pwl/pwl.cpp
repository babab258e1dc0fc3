#include "bess/pwl/pwl.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace bess::pwl {

double PwlExpansion::max_abs_slope() const {
  double m = 0.0;
  for (double s : slopes) m = std::max(m, std::abs(s));
  return m;
}

PwlExpansion build_expansion(const std::function<double(double)>& f, double y_lo, double y_hi,
                             int n_seg, std::optional<double> big_m,
                             std::optional<double> eps_plus) {
  if (!(y_lo < y_hi)) {
    std::ostringstream msg;
    msg << "pwl domain invalid: y_lo " << y_lo << " >= y_hi " << y_hi;
    throw std::invalid_argument(msg.str());
  }
  if (n_seg < 1) throw std::invalid_argument("pwl segment count must be >= 1");

  PwlExpansion e;
  e.y_lo = y_lo;
  e.y_hi = y_hi;
  e.n_seg = n_seg;
  e.seg_width = (y_hi - y_lo) / n_seg;
  e.big_m = big_m.value_or(e.seg_width);
  e.eps_plus = eps_plus.value_or(1e-6 * e.seg_width);
  if (e.big_m < e.seg_width) throw std::invalid_argument("pwl big-M must be >= segment width");
  if (!(e.eps_plus > 0.0 && e.eps_plus < e.seg_width)) {
    throw std::invalid_argument("pwl eps_plus must lie in (0, segment width)");
  }

  std::vector<double> node(static_cast<std::size_t>(n_seg) + 1);
  for (int k = 0; k <= n_seg; ++k) {
    node[static_cast<std::size_t>(k)] = f(k == n_seg ? y_hi : e.breakpoint(k));
  }
  e.f_lo = node[0];
  e.slopes.resize(static_cast<std::size_t>(n_seg));
  for (std::size_t k = 0; k < e.slopes.size(); ++k) {
    e.slopes[k] = (node[k + 1] - node[k]) / e.seg_width;
  }
  return e;
}

std::vector<double> fill_segments(const PwlExpansion& exp, double y) {
  if (!(y >= exp.y_lo && y <= exp.y_hi)) {
    std::ostringstream msg;
    msg << "pwl argument " << y << " outside [" << exp.y_lo << ", " << exp.y_hi << "]";
    throw std::domain_error(msg.str());
  }
  std::vector<double> seg(static_cast<std::size_t>(exp.n_seg), 0.0);
  double rest = y - exp.y_lo;
  for (auto& d : seg) {
    if (rest <= 0.0) break;
    d = std::min(rest, exp.seg_width);
    rest -= d;
  }
  // Rounding can leave a sliver past the last breakpoint.
  if (rest > 0.0) seg.back() += rest;
  return seg;
}

std::vector<double> fill_binaries(const PwlExpansion& exp, std::span<const double> segments) {
  std::vector<double> x(static_cast<std::size_t>(exp.n_seg), 0.0);
  for (std::size_t k = 0; k < x.size() && k < segments.size(); ++k) {
    x[k] = segments[k] > 0.0 ? 1.0 : 0.0;
  }
  return x;
}

double eval_interpolant(const PwlExpansion& exp, double y) {
  const auto seg = fill_segments(exp, y);
  double f = exp.f_lo;
  for (std::size_t k = 0; k < seg.size(); ++k) {
    if (seg[k] == 0.0) break;
    f += exp.slopes[k] * seg[k];
  }
  return f;
}

PwlBlock emit_constraints(const PwlExpansion& exp, milp::Model& model, milp::VarId y,
                          const std::string& prefix, int priority_base) {
  using milp::LinearExpr;
  using milp::Sense;
  const auto& yv = model.variable(y);
  const double slack = 1e-12 * std::max(1.0, std::abs(exp.y_hi));
  if (yv.lo < exp.y_lo - slack || yv.hi > exp.y_hi + slack) {
    std::ostringstream msg;
    msg << "variable bounds [" << yv.lo << ", " << yv.hi << "] exceed pwl domain [" << exp.y_lo
        << ", " << exp.y_hi << "]";
    throw BoundMismatchError(msg.str());
  }

  PwlBlock b;
  const int n = exp.n_seg;
  b.f = LinearExpr(exp.f_lo);
  for (int k = 0; k < n; ++k) {
    const std::string tag = prefix + "_" + std::to_string(k + 1);
    b.segments.push_back(
        model.add_variable(0.0, exp.seg_width, milp::VarType::Continuous, "d_" + tag));
    b.binaries.push_back(model.add_binary("x_" + tag));
    model.set_branch_priority(b.binaries.back(), priority_base + (n - k));
    b.f.add(b.segments.back(), exp.slopes[static_cast<std::size_t>(k)]);
  }
  for (int k = 0; k < n; ++k) {
    const auto kk = static_cast<std::size_t>(k);
    b.constraints.push_back(model.add_constraint(
        b.segments[kk] - exp.seg_width * b.binaries[kk], Sense::LessEqual, 0.0,
        prefix + "_cap_" + std::to_string(k + 1)));
  }
  LinearExpr sum;
  for (auto d : b.segments) sum.add(d, 1.0);
  sum.add(y, -1.0);
  b.constraints.push_back(model.add_constraint(sum, Sense::Equal, -exp.y_lo, prefix + "_sum"));
  for (int k = 0; k + 1 < n; ++k) {
    const auto kk = static_cast<std::size_t>(k);
    b.constraints.push_back(model.add_constraint(
        b.segments[kk] - exp.big_m * b.binaries[kk + 1], Sense::GreaterEqual,
        exp.seg_width - exp.big_m - exp.eps_plus, prefix + "_order_" + std::to_string(k + 1)));
  }
  return b;
}

FillOrderCheck check_fill_order(const PwlExpansion& exp, std::span<const double> segments,
                                std::span<const double> binaries, double tol) {
  FillOrderCheck r;
  const auto n = static_cast<std::size_t>(exp.n_seg);
  if (segments.size() != n || binaries.size() != n) {
    r.ok = false;
    r.reason = "length mismatch";
    return r;
  }
  auto fail = [&](std::size_t k, const std::string& why) {
    r.ok = false;
    r.index = static_cast<int>(k);
    r.reason = why;
    return r;
  };
  for (std::size_t k = 0; k < n; ++k) {
    const bool x = binaries[k] > 0.5;
    if (segments[k] < -tol) return fail(k, "segment negative");
    if (segments[k] > (x ? exp.seg_width : 0.0) + tol) return fail(k, "segment exceeds x*width");
    if (k + 1 < n) {
      const bool next = binaries[k + 1] > 0.5;
      if (next && !x) return fail(k, "binary order broken");
      const double need = exp.seg_width - (next ? 0.0 : exp.big_m) - exp.eps_plus;
      if (segments[k] < need - tol) return fail(k, "segment not full before next segment");
    }
  }
  return r;
}

double max_abs_error(const PwlExpansion& exp, const std::function<double(double)>& f, int grid_n) {
  if (grid_n < 2) throw std::invalid_argument("grid_n must be >= 2");
  double worst = 0.0;
  for (int i = 0; i < grid_n; ++i) {
    const double y =
        i == grid_n - 1 ? exp.y_hi : exp.y_lo + (exp.y_hi - exp.y_lo) * i / (grid_n - 1);
    worst = std::max(worst, std::abs(eval_interpolant(exp, y) - f(y)));
  }
  return worst;
}

}  // namespace bess::pwl
