#include "bess/degradation/life_loss.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace bess::degradation {
namespace {

void require_unit_interval(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1.0)) {
    std::ostringstream msg;
    msg << what << " " << v << " outside [0, 1]";
    throw std::domain_error(msg.str());
  }
}

}  // namespace

double cycles_to_failure(const CycleLifeCurve& curve, double dod) {
  require_unit_interval(dod, "DOD");
  return curve.evaluate(dod);
}

double half_cycle_loss(const CycleLifeCurve& curve, double soc) {
  require_unit_interval(soc, "SOC");
  return 1.0 / (2.0 * curve.evaluate(1.0 - soc));
}

double loss_coefficient(const CycleLifeCurve& curve, const BatteryParams& battery, double soc) {
  require_unit_interval(soc, "SOC");
  const double d = 1.0 - soc;
  const double n = curve.evaluate(d);
  return -curve.derivative(d) / (2.0 * battery.c_rated * n * n);
}

double primitive(const CycleLifeCurve& curve, double soc) {
  require_unit_interval(soc, "SOC");
  return 0.5 * (1.0 / curve.evaluate(1.0) - 1.0 / curve.evaluate(1.0 - soc));
}

double step_loss_exact(const CycleLifeCurve& curve, double soc_prev, double soc_next) {
  return std::abs(primitive(curve, soc_next) - primitive(curve, soc_prev));
}

}  // namespace bess::degradation
