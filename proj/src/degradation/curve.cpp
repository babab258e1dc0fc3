#include "bess/degradation/curve.hpp"

#include <cmath>
#include <sstream>

namespace bess::degradation {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

CycleLifeCurve::CycleLifeCurve(std::variant<Polynomial4, BiExponential> form)
    : form_(std::move(form)) {
  constexpr int n = kValidationGrid;
  double prev = 0.0;
  bool strict = true;
  for (int k = 0; k < n; ++k) {
    const double d = static_cast<double>(k) / (n - 1);
    const double v = evaluate(d);
    if (!std::isfinite(v) || v <= 0.0) {
      std::ostringstream msg;
      msg << "cycle life curve is not positive at DOD " << d << " (N = " << v << ")";
      throw CurveError(msg.str());
    }
    if (k > 0) {
      if (v > prev) {
        std::ostringstream msg;
        msg << "cycle life curve increases near DOD " << d << " (" << prev << " -> " << v << ")";
        throw CurveError(msg.str());
      }
      if (!(v < prev)) strict = false;
    }
    prev = v;
  }
  strict_ = strict;
}

CycleLifeCurve CycleLifeCurve::polynomial(std::array<double, 5> a) {
  return CycleLifeCurve(Polynomial4{a});
}

CycleLifeCurve CycleLifeCurve::bi_exponential(double b1, double c1, double b2, double c2) {
  return CycleLifeCurve(BiExponential{b1, c1, b2, c2});
}

CycleLifeCurve CycleLifeCurve::lfp_reference() {
  return bi_exponential(49660.0, -14.32, 34280.0, -2.181);
}

double CycleLifeCurve::evaluate(double d) const {
  return std::visit(
      Overloaded{
          [d](const Polynomial4& p) {
            const auto& a = p.a;
            return (((a[4] * d + a[3]) * d + a[2]) * d + a[1]) * d + a[0];
          },
          [d](const BiExponential& e) {
            return e.b1 * std::exp(e.c1 * d) + e.b2 * std::exp(e.c2 * d);
          },
      },
      form_);
}

double CycleLifeCurve::derivative(double d) const {
  return std::visit(
      Overloaded{
          [d](const Polynomial4& p) {
            const auto& a = p.a;
            return ((4.0 * a[4] * d + 3.0 * a[3]) * d + 2.0 * a[2]) * d + a[1];
          },
          [d](const BiExponential& e) {
            return e.b1 * e.c1 * std::exp(e.c1 * d) + e.b2 * e.c2 * std::exp(e.c2 * d);
          },
      },
      form_);
}

void BatteryParams::validate() const {
  auto fail = [](const std::string& what) { throw std::invalid_argument("battery: " + what); };
  if (!(c_rated > 0.0)) fail("C_rated must be positive");
  if (!(c_bess >= 0.0)) fail("C_BESS must be non-negative");
  if (!(p_dis_max >= 0.0)) fail("P_dis_max must be non-negative");
  if (!(p_ch_max >= 0.0)) fail("P_ch_max must be non-negative");
  if (!(eta_ch > 0.0 && eta_ch <= 1.0)) fail("eta_ch must lie in (0, 1]");
  if (!(eta_dis >= 1.0)) fail("eta_dis must be at least 1");
  if (!(soc_min >= 0.0)) fail("soc_min must be at least 0");
  if (!(soc_max <= 1.0)) fail("soc_max must be at most 1");
  if (!(soc_min < soc_max)) fail("soc_min must be below soc_max");
}

}  // namespace bess::degradation
