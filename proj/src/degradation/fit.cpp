#include "bess/degradation/fit.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <sstream>

namespace bess::degradation {

std::array<double, 5> least_squares_quartic(std::span<const CycleSample> samples) {
  if (samples.size() < 5) {
    throw std::invalid_argument("quartic fit needs at least 5 samples, got " +
                                std::to_string(samples.size()));
  }
  const auto m = static_cast<Eigen::Index>(samples.size());
  Eigen::MatrixXd design(m, 5);
  Eigen::VectorXd target(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto& s = samples[static_cast<std::size_t>(i)];
    if (!(s.dod >= 0.0 && s.dod <= 1.0)) {
      std::ostringstream msg;
      msg << "sample " << i << ": DOD " << s.dod << " outside [0, 1]";
      throw std::invalid_argument(msg.str());
    }
    if (!(s.cycles > 0.0)) {
      std::ostringstream msg;
      msg << "sample " << i << ": cycle count must be positive";
      throw std::invalid_argument(msg.str());
    }
    double p = 1.0;
    for (int k = 0; k < 5; ++k) {
      design(i, k) = p;
      p *= s.dod;
    }
    target(i) = s.cycles;
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  qr.setThreshold(1e-12);
  if (qr.rank() < 5) {
    throw RankDeficientError("quartic fit design matrix has rank " + std::to_string(qr.rank()) +
                             " < 5 (need 5 distinct DOD values)");
  }
  const Eigen::VectorXd coef = qr.solve(target);

  std::array<double, 5> a{};
  for (int k = 0; k < 5; ++k) a[static_cast<std::size_t>(k)] = coef(k);
  return a;
}

CycleLifeCurve fit_polynomial_curve(std::span<const CycleSample> samples) {
  CycleLifeCurve curve = CycleLifeCurve::polynomial(least_squares_quartic(samples));
  if (!curve.strictly_decreasing()) {
    throw CurveError("fitted quartic is not strictly decreasing on [0, 1]");
  }
  return curve;
}

double residual_norm(const std::array<double, 5>& a, std::span<const CycleSample> samples) {
  double ss = 0.0;
  for (const auto& s : samples) {
    const double d = s.dod;
    const double r = a[0] + d * (a[1] + d * (a[2] + d * (a[3] + d * a[4]))) - s.cycles;
    ss += r * r;
  }
  return std::sqrt(ss);
}

double residual_norm(const CycleLifeCurve& curve, std::span<const CycleSample> samples) {
  double ss = 0.0;
  for (const auto& s : samples) {
    const double r = curve.evaluate(s.dod) - s.cycles;
    ss += r * r;
  }
  return std::sqrt(ss);
}

}  // namespace bess::degradation
