#pragma once

#include <array>
#include <span>
#include <stdexcept>

#include "bess/degradation/curve.hpp"

namespace bess::degradation {

class RankDeficientError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CycleSample {
  double dod = 0.0;
  double cycles = 0.0;
};

// Raw least-squares coefficients a0..a4, no monotonicity check. Throws
// std::invalid_argument on bad samples and RankDeficientError when fewer than
// five distinct DOD values are present.
std::array<double, 5> least_squares_quartic(std::span<const CycleSample> samples);

// Least-squares quartic through cycle-test samples. Needs at least five
// samples with DOD in [0, 1] and positive cycle counts. The result must be
// strictly decreasing on [0, 1]; oscillating fits are rejected with
// CurveError rather than clamped.
CycleLifeCurve fit_polynomial_curve(std::span<const CycleSample> samples);

// Euclidean norm of N(dod_i) - cycles_i.
double residual_norm(const CycleLifeCurve& curve, std::span<const CycleSample> samples);
double residual_norm(const std::array<double, 5>& a, std::span<const CycleSample> samples);

}  // namespace bess::degradation
