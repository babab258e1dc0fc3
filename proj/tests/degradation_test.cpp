#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "bess/degradation/fit.hpp"
#include "bess/degradation/life_loss.hpp"
#include "support/oracles.hpp"

using namespace bess::degradation;

namespace {
const CycleLifeCurve kRef = CycleLifeCurve::lfp_reference();
const CycleLifeCurve kFlat = CycleLifeCurve::polynomial({1000, 0, 0, 0, 0});

double ref_n(double d) { return 49660.0 * std::exp(-14.32 * d) + 34280.0 * std::exp(-2.181 * d); }
}  // namespace

TEST_CASE("cycles_to_failure") {
  CHECK(cycles_to_failure(kRef, 0.0) == 83940.0);
  CHECK(cycles_to_failure(kRef, 1.0) == doctest::Approx(ref_n(1.0)).epsilon(1e-15));
  CHECK(cycles_to_failure(kRef, 1.0) == doctest::Approx(3870.0).epsilon(1e-3));
  CHECK(cycles_to_failure(kFlat, 0.37) == 1000.0);
  CHECK_THROWS_AS(cycles_to_failure(kRef, -0.01), std::domain_error);
  CHECK_THROWS_AS(cycles_to_failure(kRef, 1.01), std::domain_error);
}

TEST_CASE("half_cycle_loss") {
  CHECK(half_cycle_loss(kRef, 1.0) == doctest::Approx(1.0 / (2.0 * 83940.0)).epsilon(1e-15));
  CHECK(half_cycle_loss(kRef, 1.0) == doctest::Approx(5.956e-6).epsilon(1e-3));
  CHECK(half_cycle_loss(kRef, 0.0) == doctest::Approx(1.0 / (2.0 * cycles_to_failure(kRef, 1.0))));
  CHECK(half_cycle_loss(kFlat, 0.5) == doctest::Approx(5e-4));
  CHECK_THROWS_AS(half_cycle_loss(kRef, 2.0), std::domain_error);
}

TEST_CASE("loss_coefficient matches a finite difference of the half-cycle loss") {
  const BatteryParams b;
  const auto g = [&](double s) { return 1.0 / (2.0 * b.c_rated * ref_n(1.0 - s)); };
  // g decreases with s; the loss coefficient is its magnitude.
  const double fd = -bess::testing::central_difference(g, 0.5, 1e-6);
  const double lam = loss_coefficient(kRef, b, 0.5);
  CHECK(lam > 0.0);
  CHECK(std::abs(lam - fd) <= 1e-6 * std::abs(fd));
  CHECK(loss_coefficient(kFlat, b, 0.3) == 0.0);
  CHECK_THROWS_AS(loss_coefficient(kRef, b, -1.0), std::domain_error);
}

TEST_CASE("primitive") {
  CHECK(primitive(kRef, 0.0) == 0.0);
  CHECK(primitive(kRef, 1.0) ==
        doctest::Approx(0.5 * (1.0 / ref_n(1.0) - 1.0 / 83940.0)).epsilon(1e-14));
  CHECK_THROWS_AS(primitive(kRef, 1.5), std::domain_error);
}

TEST_CASE("primitive equals the integral of the loss coefficient") {
  const BatteryParams b;
  const auto integrand = [&](double s) { return loss_coefficient(kRef, b, s) * b.c_rated; };
  for (double s : {0.05, 0.15, 0.5, 0.85, 1.0}) {
    const double q = bess::testing::adaptive_simpson(integrand, 0.0, s, 1e-16);
    CAPTURE(s);
    CHECK(std::abs(primitive(kRef, s) - q) <= 1e-12);
  }
  const auto poly = CycleLifeCurve::polynomial({6000, -9000, 6000, -2000, 0});
  const auto ip = [&](double s) { return loss_coefficient(poly, b, s) * b.c_rated; };
  CHECK(std::abs(primitive(poly, 0.7) - bess::testing::adaptive_simpson(ip, 0.0, 0.7, 1e-16)) <= 1e-12);
}

TEST_CASE("derivative of the primitive is the loss coefficient times capacity") {
  const BatteryParams b;
  const auto f = [&](double s) { return primitive(kRef, s); };
  for (int i = 0; i <= 100; ++i) {
    const double s = std::clamp(i / 100.0, 1e-5, 1.0 - 1e-5);
    const double expect = loss_coefficient(kRef, b, s) * b.c_rated;
    const double fd = bess::testing::central_difference(f, s, 1e-6);
    CAPTURE(s);
    CHECK(std::abs(fd - expect) <= 1e-6 * std::abs(expect));
  }
}

TEST_CASE("step_loss_exact") {
  CHECK(step_loss_exact(kRef, 0.4, 0.4) == 0.0);
  CHECK(step_loss_exact(kRef, 0.85, 0.15) == step_loss_exact(kRef, 0.15, 0.85));
  const double whole = step_loss_exact(kRef, 0.2, 0.8);
  double sum = 0.0;
  for (int k = 0; k < 60; ++k) {
    sum += step_loss_exact(kRef, 0.2 + 0.6 * k / 60.0, 0.2 + 0.6 * (k + 1) / 60.0);
  }
  CHECK(std::abs(sum - whole) <= 1e-15 * 60);
  CHECK_THROWS_AS(step_loss_exact(kRef, 0.5, 1.2), std::domain_error);
}

TEST_CASE("primitive is monotone and the round trip identity holds") {
  double prev = -1.0;
  for (int i = 0; i <= 1000; ++i) {
    const double f = primitive(kRef, i / 1000.0);
    CHECK(f > prev);
    prev = f;
  }
  for (int k = 1; k <= 10; ++k) {
    const double d = k / 10.0;
    const double lhs = 2.0 * (primitive(kRef, 1.0) - primitive(kRef, 1.0 - d));
    const double rhs = 1.0 / cycles_to_failure(kRef, d) - 1.0 / cycles_to_failure(kRef, 0.0);
    CHECK(std::abs(lhs - rhs) <= 1e-15);
  }
}

TEST_CASE("curve construction rejects increasing or non-positive curves") {
  CHECK_THROWS_AS(CycleLifeCurve::polynomial({1000, 10, 0, 0, 0}), CurveError);
  CHECK_THROWS_AS(CycleLifeCurve::polynomial({1000, -2000, 0, 0, 0}), CurveError);
  CHECK_THROWS_AS(CycleLifeCurve::bi_exponential(100, 1.0, 100, -1.0), CurveError);
  CHECK(kRef.strictly_decreasing());
  CHECK_FALSE(kFlat.strictly_decreasing());
}

TEST_CASE("battery parameter validation") {
  BatteryParams b;
  CHECK_NOTHROW(b.validate());
  b.eta_dis = 0.9;
  CHECK_THROWS_AS(b.validate(), std::invalid_argument);
  b = BatteryParams{};
  b.soc_min = 0.9;
  CHECK_THROWS_AS(b.validate(), std::invalid_argument);
  b = BatteryParams{};
  b.c_rated = 0.0;
  CHECK_THROWS_AS(b.validate(), std::invalid_argument);
}

TEST_CASE("fit recovers an exact quartic") {
  const std::array<double, 5> a{20000, -30000, 20000, -8000, 1200};
  const auto truth = CycleLifeCurve::polynomial(a);
  std::vector<CycleSample> samples;
  for (double d : {0.1, 0.3, 0.5, 0.7, 0.9}) samples.push_back({d, truth.evaluate(d)});
  const auto fit = fit_polynomial_curve(samples);
  const auto& got = std::get<Polynomial4>(fit.form()).a;
  for (int i = 0; i < 5; ++i) CHECK(std::abs(got[i] - a[i]) <= 1e-8 * std::abs(a[i]));
}

TEST_CASE("least squares of the reference curve beats perturbed coefficients") {
  std::vector<CycleSample> samples;
  for (int k = 1; k <= 10; ++k) samples.push_back({k / 10.0, ref_n(k / 10.0)});
  const auto a = least_squares_quartic(samples);
  const double r0 = residual_norm(a, samples);
  for (int i = 0; i < 5; ++i) {
    for (double rel : {-1e-3, -1e-6, 1e-6, 1e-3}) {
      auto p = a;
      p[i] += rel * std::max(1.0, std::abs(a[i]));
      CHECK(r0 < residual_norm(p, samples));
    }
  }
  // The quartic turns upward just below DOD 1, so the curve check rejects it.
  CHECK_THROWS_AS(fit_polynomial_curve(samples), CurveError);
}

TEST_CASE("fit of linear decreasing samples is accepted") {
  std::vector<CycleSample> samples;
  for (int k = 0; k <= 20; ++k) samples.push_back({k / 20.0, 20000.0 - 15000.0 * k / 20.0});
  const auto fit = fit_polynomial_curve(samples);
  CHECK(fit.strictly_decreasing());
  CHECK(residual_norm(fit, samples) < 1e-6);
}

TEST_CASE("fit preconditions") {
  std::vector<CycleSample> four{{0.1, 900}, {0.2, 800}, {0.3, 700}, {0.4, 600}};
  CHECK_THROWS_AS(fit_polynomial_curve(four), std::invalid_argument);
  std::vector<CycleSample> dup{{0.5, 900}, {0.5, 800}, {0.5, 700}, {0.5, 600}, {0.5, 500}};
  CHECK_THROWS_AS(fit_polynomial_curve(dup), RankDeficientError);
  std::vector<CycleSample> wavy{{0.0, 1000}, {0.25, 500}, {0.5, 900}, {0.75, 300}, {1.0, 200}};
  CHECK_THROWS_AS(fit_polynomial_curve(wavy), CurveError);
}
