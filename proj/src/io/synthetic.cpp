#include "bess/io/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace bess::io {

namespace {

// Uniform on [-1, 1) from the top 53 bits, so the sequence depends only on
// the mt19937_64 definition and not on library distribution code.
double symmetric_unit(std::mt19937_64& rng) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return 2.0 * u - 1.0;
}

}  // namespace

SyntheticDay generate_synthetic_day(std::uint64_t seed, const SyntheticOptions& options) {
  SyntheticDay day;
  const std::int64_t start = parse_timestamp(options.start);
  for (TimeSeries* ts : {&day.p_sch, &day.p_wind_f, &day.c_e}) {
    ts->start = start;
    ts->step_minutes = options.step_minutes;
    ts->values.resize(options.steps);
  }
  day.p_sch.unit = "MW";
  day.p_wind_f.unit = "MW";
  day.c_e.unit = "currency/MWh";

  std::mt19937_64 rng(seed);
  const double two_pi = 2.0 * std::numbers::pi;
  double e = 0.0;
  for (std::size_t i = 0; i < options.steps; ++i) {
    const std::int64_t minute = start + static_cast<std::int64_t>(i) * options.step_minutes;
    const double h = static_cast<double>(((minute % 1440) + 1440) % 1440) / 60.0;
    const double hours = static_cast<double>(i * static_cast<std::size_t>(options.step_minutes)) / 60.0;

    const double sch = 70.0 + 30.0 * std::sin(two_pi * (hours - 9.0) / 24.0) +
                       10.0 * std::sin(two_pi * hours / 8.0 + 0.7);
    e = std::clamp(0.8 * e + 0.6 * symmetric_unit(rng), -1.0, 1.0);
    day.p_sch.values[i] = sch;
    day.p_wind_f.values[i] = std::max(0.0, sch * (1.0 + options.deviation_amplitude * e));
    day.c_e.values[i] = (h >= 8.0 && h < 20.0) ? options.peak_price : options.offpeak_price;
  }
  return day;
}

}  // namespace bess::io
