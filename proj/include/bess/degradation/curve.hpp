#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <variant>

namespace bess::degradation {

// Thrown when a curve fails the positivity or monotonicity checks.
class CurveError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// N(d) = a0 + a1 d + a2 d^2 + a3 d^3 + a4 d^4
struct Polynomial4 {
  std::array<double, 5> a{};
};

// N(d) = b1 exp(c1 d) + b2 exp(c2 d)
struct BiExponential {
  double b1 = 0.0;
  double c1 = 0.0;
  double b2 = 0.0;
  double c2 = 0.0;
};

// Cycles-to-failure as a function of depth of discharge on [0, 1].
//
// Construction samples the curve on a uniform 1001-point grid and rejects it
// if any sample is non-positive or if the curve increases anywhere. Flat
// curves are accepted (their loss coefficient is identically zero); use
// strictly_decreasing() when a strict check is needed.
class CycleLifeCurve {
 public:
  static constexpr int kValidationGrid = 1001;

  static CycleLifeCurve polynomial(std::array<double, 5> a);
  static CycleLifeCurve bi_exponential(double b1, double c1, double b2, double c2);

  // Cycles at depth d, no domain check.
  double evaluate(double d) const;
  // dN/dd, analytic.
  double derivative(double d) const;

  bool strictly_decreasing() const { return strict_; }

  const std::variant<Polynomial4, BiExponential>& form() const { return form_; }

  // Reference LFP fit: 49660 e^{-14.32 d} + 34280 e^{-2.181 d}.
  static CycleLifeCurve lfp_reference();

 private:
  explicit CycleLifeCurve(std::variant<Polynomial4, BiExponential> form);

  std::variant<Polynomial4, BiExponential> form_;
  bool strict_ = false;
};

// Battery plant data. Capacities in MWh, powers in MW, money in currency units.
struct BatteryParams {
  double c_rated = 25.0;
  double c_bess = 1.285e7;
  double p_dis_max = 10.0;
  double p_ch_max = 10.0;
  double eta_dis = 1.05;
  double eta_ch = 0.95;
  double soc_min = 0.15;
  double soc_max = 0.85;

  // Throws std::invalid_argument naming the first violated invariant.
  void validate() const;
};

}  // namespace bess::degradation
