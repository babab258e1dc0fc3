#pragma once
// Uniformly stepped series stored one per CSV file:
//
//   # unit: MW            (optional)
//   timestamp,value
//   2024-06-01T00:00:00,61.25
//   ...
//
// Timestamps are ISO-8601 date-times (seconds and a trailing Z optional).
// Gaps, duplicates and step changes are errors; nothing is interpolated.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace bess::io {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class SeriesError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Minutes since 1970-01-01T00:00. Throws std::invalid_argument if malformed.
std::int64_t parse_timestamp(const std::string& text);
std::string format_timestamp(std::int64_t minutes);

struct TimeSeries {
  std::int64_t start = 0;  // minutes since epoch
  int step_minutes = 15;
  std::vector<double> values;
  std::string unit;

  std::string timestamp(std::size_t i) const;
  std::vector<std::string> timestamps() const;
};

// Throws ParseError (with line number) or SeriesError (step, gap, unit).
TimeSeries read_timeseries(std::istream& in, int expected_step_minutes,
                           const std::string& source = "<stream>",
                           const std::optional<std::string>& expected_unit = std::nullopt);
TimeSeries load_timeseries(const std::filesystem::path& path, int expected_step_minutes,
                           const std::optional<std::string>& expected_unit = std::nullopt);

// Values are printed with 17 significant digits so reading back is exact.
void write_timeseries(std::ostream& out, const TimeSeries& ts);
void save_timeseries(const std::filesystem::path& path, const TimeSeries& ts);

// Centered moving average over window_minutes / step points. At the edges
// the window shrinks to the points that exist. For an even point count k the
// window covers i - (k-1)/2 .. i + k/2. Throws std::invalid_argument unless
// the window is a positive multiple of the step.
TimeSeries moving_average_schedule(const TimeSeries& forecast, int window_minutes);

}  // namespace bess::io
