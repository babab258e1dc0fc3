#pragma once
// Brute-force range of the PWL block value for a fixed argument.
//
// For one binary pattern the segment variables live in a box with a single
// equality sum(d) = y - y_lo, so the min and max of sum(slope*d) follow from
// greedy filling in slope order (a continuous knapsack). No LP solver needed.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

#include "bess/pwl/pwl.hpp"

namespace bess::testing {

struct PatternRange {
  std::uint32_t pattern = 0;
  double f_min = 0.0;
  double f_max = 0.0;
};

inline std::optional<PatternRange> pattern_range(const pwl::PwlExpansion& e, double y,
                                                 std::uint32_t pattern) {
  const auto n = static_cast<std::size_t>(e.n_seg);
  std::vector<double> lo(n), hi(n);
  for (std::size_t k = 0; k < n; ++k) {
    const bool x = (pattern >> k) & 1u;
    hi[k] = x ? e.seg_width : 0.0;
    double need = 0.0;
    if (k + 1 < n) {
      const bool next = (pattern >> (k + 1)) & 1u;
      need = e.seg_width - (next ? 0.0 : e.big_m) - e.eps_plus;
    }
    lo[k] = std::max(0.0, need);
    if (lo[k] > hi[k]) return std::nullopt;
  }
  const double target = y - e.y_lo;
  const double base = std::accumulate(lo.begin(), lo.end(), 0.0);
  const double room = std::accumulate(hi.begin(), hi.end(), 0.0) - base;
  const double extra = target - base;
  const double tol = 1e-12;
  if (extra < -tol || extra > room + tol) return std::nullopt;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return e.slopes[a] < e.slopes[b]; });
  auto greedy = [&](bool ascending) {
    double f = e.f_lo;
    for (std::size_t k = 0; k < n; ++k) f += e.slopes[k] * lo[k];
    double left = std::max(0.0, extra);
    for (std::size_t i = 0; i < n && left > 0.0; ++i) {
      const std::size_t k = ascending ? order[i] : order[n - 1 - i];
      const double take = std::min(left, hi[k] - lo[k]);
      f += e.slopes[k] * take;
      left -= take;
    }
    return f;
  };
  return PatternRange{pattern, greedy(true), greedy(false)};
}

inline std::vector<PatternRange> all_feasible_ranges(const pwl::PwlExpansion& e, double y) {
  std::vector<PatternRange> out;
  for (std::uint32_t p = 0; p < (1u << e.n_seg); ++p) {
    if (auto r = pattern_range(e, y, p)) out.push_back(*r);
  }
  return out;
}

}  // namespace bess::testing
