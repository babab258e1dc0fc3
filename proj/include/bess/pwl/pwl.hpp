#pragma once
// Piecewise-linear interpolation of a scalar function on uniform breakpoints,
// as a plain interpolant and as a mixed-integer constraint block whose binary
// fill-order rows force segments to fill left to right. That ordering makes
// the block reproduce the interpolant even when the function is not convex.

#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "bess/milp/model.hpp"

namespace bess::pwl {

class BoundMismatchError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct PwlExpansion {
  double y_lo = 0.0;
  double y_hi = 0.0;
  int n_seg = 0;
  double seg_width = 0.0;
  double f_lo = 0.0;
  std::vector<double> slopes;  // secant slope of segment 1..n_seg, stored 0-based
  double big_m = 0.0;
  double eps_plus = 0.0;

  double breakpoint(int k) const { return y_lo + k * seg_width; }
  double max_abs_slope() const;
};

// Defaults: big_m = seg_width, eps_plus = 1e-6 * seg_width.
// Throws std::invalid_argument for y_lo >= y_hi, n_seg < 1, big_m < seg_width
// or eps_plus outside (0, seg_width).
PwlExpansion build_expansion(const std::function<double(double)>& f, double y_lo, double y_hi,
                             int n_seg, std::optional<double> big_m = std::nullopt,
                             std::optional<double> eps_plus = std::nullopt);

// Left-to-right segment fill for y: full segments, then one partial, then zeros.
// Throws std::domain_error outside [y_lo, y_hi].
std::vector<double> fill_segments(const PwlExpansion& exp, double y);
// Binaries matching fill_segments: 1 where the segment holds anything.
std::vector<double> fill_binaries(const PwlExpansion& exp, std::span<const double> segments);

double eval_interpolant(const PwlExpansion& exp, double y);

struct PwlBlock {
  milp::LinearExpr f;
  std::vector<milp::VarId> segments;
  std::vector<milp::VarId> binaries;
  std::vector<milp::ConstraintId> constraints;
};

// Adds segment variables, binaries and rows for y to the model and returns the
// affine expression f = f_lo + sum slope_k * segment_k. Binaries get branch
// priority priority_base + (n_seg - k), so lower-index segments branch first.
// Throws BoundMismatchError if y's bounds leave [y_lo, y_hi].
PwlBlock emit_constraints(const PwlExpansion& exp, milp::Model& model, milp::VarId y,
                          const std::string& prefix = "pwl", int priority_base = 0);

struct FillOrderCheck {
  bool ok = true;
  int index = -1;  // 0-based segment of the first violation
  std::string reason;
};

// Checks segment box rows, the fill-order rows and x[k+1] => x[k]. Binary
// values above 0.5 count as set.
FillOrderCheck check_fill_order(const PwlExpansion& exp, std::span<const double> segments,
                                std::span<const double> binaries, double tol);

// Max |interpolant - f| over grid_n uniform points. grid_n >= 2.
double max_abs_error(const PwlExpansion& exp, const std::function<double(double)>& f, int grid_n);

}  // namespace bess::pwl
