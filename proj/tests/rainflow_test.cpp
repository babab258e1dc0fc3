#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "bess/degradation/life_loss.hpp"
#include "bess/rainflow/rainflow.hpp"
#include "support/rainflow_oracle.hpp"

using namespace bess;
using rainflow::CycleSet;

namespace {

const degradation::CycleLifeCurve kRef = degradation::CycleLifeCurve::lfp_reference();

double n_of(double d) { return degradation::cycles_to_failure(kRef, d); }

std::vector<double> depths(const std::vector<rainflow::Cycle>& cs) {
  std::vector<double> v;
  for (const auto& c : cs) v.push_back(c.depth);
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<double> random_walk(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-0.08, 0.08);
  std::vector<double> s{0.5};
  for (std::size_t i = 1; i < n; ++i) s.push_back(std::clamp(s.back() + u(rng), 0.15, 0.85));
  return s;
}

}  // namespace

TEST_CASE("extract_extrema") {
  CHECK(rainflow::extract_extrema(std::vector<double>{0.4, 0.4, 0.4}) == std::vector<double>{0.4});
  CHECK(rainflow::extract_extrema(std::vector<double>{0.1, 0.2, 0.3, 0.4}) ==
        std::vector<double>{0.1, 0.4});
  const std::vector<double> alt{0.5, 0.8, 0.3, 0.9, 0.2};
  CHECK(rainflow::extract_extrema(alt) == alt);
  CHECK(rainflow::extract_extrema(std::vector<double>{0.2, 0.5, 0.5, 0.7, 0.7, 0.3}) ==
        std::vector<double>{0.2, 0.7, 0.3});
  CHECK(rainflow::extract_extrema(std::vector<double>{}).empty());
}

TEST_CASE("rainflow_count hand-traced examples") {
  const CycleSet one = rainflow::rainflow_count(std::vector<double>{1.0, 0.6, 1.0});
  CHECK(one.full.empty());
  REQUIRE(one.half.size() == 2);
  CHECK(one.half[0].depth == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(one.half[1].depth == doctest::Approx(0.4).epsilon(1e-15));

  const CycleSet two = rainflow::rainflow_count(std::vector<double>{1.0, 0.3, 1.0, 0.3, 1.0});
  REQUIRE(two.full.size() == 1);
  CHECK(two.full[0].depth == doctest::Approx(0.7).epsilon(1e-15));
  CHECK(two.full[0].count == 1.0);
  REQUIRE(two.half.size() == 2);
  for (const auto& h : two.half) CHECK(h.depth == doctest::Approx(0.7).epsilon(1e-15));

  CHECK(rainflow::rainflow_count(rainflow::extract_extrema(std::vector<double>(9, 0.5))).empty());
}

TEST_CASE("rainflow_count matches the rescanning oracle") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    const auto s = random_walk(rng, 5 + static_cast<std::size_t>(trial % 60));
    const auto tp = rainflow::extract_extrema(s);
    CHECK(tp == testing::oracle_turning_points(s));
    const auto ours = rainflow::rainflow_count(tp);
    const auto ref = testing::oracle_rainflow(tp);
    CHECK(depths(ours.full) == ref.full);
    CHECK(depths(ours.half) == ref.half);
  }
}

TEST_CASE("half-cycle bookkeeping") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    const auto tp = rainflow::extract_extrema(random_walk(rng, 40));
    const auto cs = rainflow::rainflow_count(tp);
    // Each full cycle removes two points (two ranges); residual ranges are halves.
    CHECK(cs.half_cycle_equivalents() == doctest::Approx(static_cast<double>(tp.size() - 1)));
    if (cs.full.empty()) CHECK(cs.half.size() == tp.size() - 1);
  }
}

TEST_CASE("life_loss_rainflow definitions") {
  CHECK(rainflow::life_loss_rainflow(CycleSet{}, kRef) == 0.0);
  CycleSet one;
  one.full.push_back({0.7, 1.0});
  CHECK(rainflow::life_loss_rainflow(one, kRef) == 1.0 / n_of(0.7));
  CycleSet halves;
  halves.half.push_back({0.4, 1.0});
  halves.half.push_back({0.4, 1.0});
  CHECK(rainflow::life_loss_rainflow(halves, kRef) ==
        doctest::Approx(1.0 / n_of(0.4)).epsilon(1e-15));
}

TEST_CASE("single round trip from full charge differs by 1/N(0)") {
  for (int i = 1; i <= 10; ++i) {
    const double d = 0.1 * i;
    const std::vector<double> soc{1.0, 1.0 - d, 1.0};
    const auto cmp = rainflow::compare_models(soc, kRef);
    CHECK(std::abs(cmp.linear_loss - (1.0 / n_of(d) - 1.0 / n_of(0.0))) <= 1e-15);
    CHECK(std::abs(cmp.rainflow_loss - 1.0 / n_of(d)) <= 1e-15);
    CHECK(std::abs((cmp.rainflow_loss - cmp.linear_loss) - 1.0 / n_of(0.0)) <= 1e-15);
    CHECK(cmp.half_cycles == 2);
    CHECK(cmp.full_cycles == 0);
  }
}

TEST_CASE("compare_models on constant and out-of-range input") {
  const auto cmp = rainflow::compare_models(std::vector<double>(20, 0.6), kRef);
  CHECK(cmp.linear_loss == 0.0);
  CHECK(cmp.rainflow_loss == 0.0);
  CHECK(cmp.excursions.empty());
  CHECK(cmp.note.find("1/N(0)") != std::string::npos);
  CHECK_THROWS_AS(rainflow::compare_models(std::vector<double>{0.5, 1.2}, kRef),
                  std::domain_error);
}

TEST_CASE("adding an excursion never lowers either loss") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.15, 0.85);
  for (int trial = 0; trial < 200; ++trial) {
    auto s = random_walk(rng, 30);
    const auto before = rainflow::compare_models(s, kRef);
    // Leave from the last point to a new level and come back.
    const double last = s.back();
    s.push_back(u(rng));
    s.push_back(last);
    const auto after = rainflow::compare_models(s, kRef);
    CHECK(after.linear_loss >= before.linear_loss);
    CHECK(after.rainflow_loss >= before.rainflow_loss * (1.0 - 1e-12));
    CHECK(before.linear_loss >= 0.0);
    CHECK(before.rainflow_loss >= 0.0);
  }
}

TEST_CASE("excursion breakdown sums to the rainflow loss") {
  std::mt19937_64 rng(5);
  const auto cmp = rainflow::compare_models(random_walk(rng, 96), kRef);
  double sum = 0.0;
  for (const auto& e : cmp.excursions) sum += e.loss;
  CHECK(sum == doctest::Approx(cmp.rainflow_loss).epsilon(1e-14));
  CHECK(cmp.excursions.size() == cmp.full_cycles + cmp.half_cycles);
}
