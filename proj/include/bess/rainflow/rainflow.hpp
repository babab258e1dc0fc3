#pragma once
// Four-point rainflow counting on SOC traces, used to cross-check the
// primitive-function loss. Depth is the only driver (no mean correction).

#include <span>
#include <string>
#include <vector>

#include "bess/degradation/curve.hpp"

namespace bess::rainflow {

struct Cycle {
  double depth = 0.0;  // SOC units, (0, 1]
  double count = 0.0;
};

struct CycleSet {
  std::vector<Cycle> full;
  std::vector<Cycle> half;

  bool empty() const { return full.empty() && half.empty(); }
  double half_cycle_equivalents() const;
};

// Turning points: endpoints kept, plateaus collapsed, interior points kept
// only where the direction reverses.
std::vector<double> extract_extrema(std::span<const double> series);

// Four-point rule: for consecutive points a, b, c, d on the stack, if
// |b - c| <= |a - b| and |b - c| <= |c - d| then (b, c) is a full cycle of
// depth |b - c| and both are removed. What remains is counted as half
// cycles between consecutive residual points.
CycleSet rainflow_count(std::span<const double> turning_points);

// sum count / N(depth) over full cycles plus count / (2 N(depth)) over halves.
double life_loss_rainflow(const CycleSet& cycles, const degradation::CycleLifeCurve& curve);

struct Excursion {
  bool full = false;
  double depth = 0.0;
  double count = 0.0;
  double loss = 0.0;
};

struct Comparison {
  double linear_loss = 0.0;
  double rainflow_loss = 0.0;
  std::size_t full_cycles = 0;
  std::size_t half_cycles = 0;
  std::vector<Excursion> excursions;
  std::string note;
};

// Linear loss is the sum of exact step losses along the trajectory.
Comparison compare_models(std::span<const double> soc, const degradation::CycleLifeCurve& curve);

}  // namespace bess::rainflow
