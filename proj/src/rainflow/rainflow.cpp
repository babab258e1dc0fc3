#include "bess/rainflow/rainflow.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "bess/degradation/life_loss.hpp"

namespace bess::rainflow {

double CycleSet::half_cycle_equivalents() const {
  double n = 0.0;
  for (const auto& c : full) n += 2.0 * c.count;
  for (const auto& c : half) n += c.count;
  return n;
}

std::vector<double> extract_extrema(std::span<const double> series) {
  std::vector<double> out;
  for (double v : series) {
    if (!out.empty() && v == out.back()) continue;  // plateau
    if (out.size() >= 2) {
      const double a = out[out.size() - 2];
      const double b = out.back();
      // b is not a reversal if the trace keeps going the same way.
      if ((b - a) * (v - b) > 0.0) {
        out.back() = v;
        continue;
      }
    }
    out.push_back(v);
  }
  return out;
}

CycleSet rainflow_count(std::span<const double> turning_points) {
  CycleSet set;
  std::vector<double> stack;
  for (double p : turning_points) {
    stack.push_back(p);
    while (stack.size() >= 4) {
      const std::size_t n = stack.size();
      const double a = stack[n - 4], b = stack[n - 3], c = stack[n - 2], d = stack[n - 1];
      const double inner = std::abs(b - c);
      if (inner <= std::abs(a - b) && inner <= std::abs(c - d)) {
        if (inner > 0.0) set.full.push_back({inner, 1.0});
        stack.erase(stack.end() - 3, stack.end() - 1);
      } else {
        break;
      }
    }
  }
  for (std::size_t i = 1; i < stack.size(); ++i) {
    const double depth = std::abs(stack[i] - stack[i - 1]);
    if (depth > 0.0) set.half.push_back({depth, 1.0});
  }
  return set;
}

double life_loss_rainflow(const CycleSet& cycles, const degradation::CycleLifeCurve& curve) {
  double loss = 0.0;
  for (const auto& c : cycles.full) loss += c.count / degradation::cycles_to_failure(curve, c.depth);
  for (const auto& c : cycles.half) {
    loss += c.count / (2.0 * degradation::cycles_to_failure(curve, c.depth));
  }
  return loss;
}

Comparison compare_models(std::span<const double> soc, const degradation::CycleLifeCurve& curve) {
  for (double s : soc) {
    if (!(s >= 0.0 && s <= 1.0)) throw std::domain_error("SOC trajectory value outside [0, 1]");
  }
  Comparison r;
  for (std::size_t i = 1; i < soc.size(); ++i) {
    r.linear_loss += degradation::step_loss_exact(curve, soc[i - 1], soc[i]);
  }
  const auto tp = extract_extrema(soc);
  const CycleSet cs = rainflow_count(tp);
  r.rainflow_loss = life_loss_rainflow(cs, curve);
  r.full_cycles = cs.full.size();
  r.half_cycles = cs.half.size();
  for (const auto& c : cs.full) {
    r.excursions.push_back(
        {true, c.depth, c.count, c.count / degradation::cycles_to_failure(curve, c.depth)});
  }
  for (const auto& c : cs.half) {
    r.excursions.push_back(
        {false, c.depth, c.count, c.count / (2.0 * degradation::cycles_to_failure(curve, c.depth))});
  }
  std::ostringstream note;
  note << "The linear model charges 1/N(D) - 1/N(0) for a full excursion of depth D that starts "
          "at full charge; rainflow charges 1/N(D). Expected offset per such excursion: 1/N(0) = "
       << 1.0 / degradation::cycles_to_failure(curve, 0.0)
       << ". Elsewhere the gap depends on where the excursion sits in the SOC range.";
  r.note = note.str();
  return r;
}

}  // namespace bess::rainflow
