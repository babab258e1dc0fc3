#pragma once
// Deterministic stand-in day for schedule tracking studies. See
// docs/synthetic_data.md for the formulas.

#include <cstdint>

#include "bess/io/timeseries.hpp"

namespace bess::io {

struct SyntheticOptions {
  std::size_t steps = 104;  // 96 applied + 8 lookahead at 15 min
  int step_minutes = 15;
  double deviation_amplitude = 0.15;  // max relative forecast deviation
  double offpeak_price = 35.0;
  double peak_price = 65.0;
  std::string start = "2024-06-01T00:00:00";
};

struct SyntheticDay {
  TimeSeries p_sch;
  TimeSeries p_wind_f;
  TimeSeries c_e;
};

inline constexpr std::uint64_t kDefaultSeed = 20240601;

SyntheticDay generate_synthetic_day(std::uint64_t seed, const SyntheticOptions& options = {});

}  // namespace bess::io
