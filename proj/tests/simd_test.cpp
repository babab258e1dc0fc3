#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "bess/simd/kernels.hpp"

using namespace bess::simd;

namespace {

std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-100.0, 100.0);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

}  // namespace

TEST_CASE("vector kernels match the scalar reference for every length") {
  std::mt19937_64 rng(42);
  const Isa host = detected_isa();
  MESSAGE("detected ISA: " << isa_name(host));
  for (std::size_t n = 0; n <= 67; ++n) {
    const auto x = random_vector(rng, n);
    const auto y0 = random_vector(rng, n);
    const double a = -1.75;

    auto y_ref = y0;
    scalar::axpy(a, x.data(), y_ref.data(), n);
    auto s_ref = x;
    scalar::scale(a, s_ref.data(), n);
    const double d_ref = scalar::dot(x.data(), y0.data(), n);

#if defined(__x86_64__) || defined(_M_X64)
    if (host == Isa::Avx2) {
      auto y = y0;
      avx2::axpy(a, x.data(), y.data(), n);
      auto s = x;
      avx2::scale(a, s.data(), n);
      for (std::size_t i = 0; i < n; ++i) {
        // FMA rounds once, the reference twice.
        CHECK(std::abs(y[i] - y_ref[i]) <= 1e-13 * (std::abs(a * x[i]) + std::abs(y0[i])));
        CHECK(s[i] == s_ref[i]);
      }
      double mag = 0.0;
      for (std::size_t i = 0; i < n; ++i) mag += std::abs(x[i] * y0[i]);
      CHECK(std::abs(avx2::dot(x.data(), y0.data(), n) - d_ref) <= 1e-14 * (mag + 1.0));
    }
#endif
  }
}

TEST_CASE("dispatch honours an explicit scalar selection") {
  const Isa before = active_isa();
  CHECK(select_isa(Isa::Scalar) == Isa::Scalar);
  CHECK(active_isa() == Isa::Scalar);
  std::vector<double> x{1, 2, 3, 4, 5}, y{1, 1, 1, 1, 1};
  axpy(2.0, x, y);
  CHECK(y == std::vector<double>{3, 5, 7, 9, 11});
  CHECK(dot(x, x) == 55.0);
  scale(0.5, y);
  CHECK(y[0] == 1.5);
  select_isa(before);
  CHECK(active_isa() == before);
}

TEST_CASE("requesting an unsupported ISA falls back to scalar") {
  const Isa before = active_isa();
  const Isa other = detected_isa() == Isa::Neon ? Isa::Avx2 : Isa::Neon;
  CHECK(select_isa(other) == Isa::Scalar);
  select_isa(before);
}
