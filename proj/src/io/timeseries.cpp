#include "bess/io/timeseries.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace bess::io {

ParseError::ParseError(const std::string& source, std::size_t line, const std::string& what)
    : std::runtime_error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

std::int64_t parse_timestamp(const std::string& text) {
  int y = 0, mo = 0, d = 0, h = 0, mi = 0, s = 0;
  char tail = 0;
  int n = std::sscanf(text.c_str(), "%4d-%2d-%2dT%2d:%2d:%2d%c", &y, &mo, &d, &h, &mi, &s, &tail);
  if (n < 6) {
    s = 0;
    tail = 0;
    n = std::sscanf(text.c_str(), "%4d-%2d-%2dT%2d:%2d%c", &y, &mo, &d, &h, &mi, &tail);
    if (n < 5 || (n == 6 && tail != 'Z')) throw std::invalid_argument("bad timestamp '" + text + "'");
  } else if (n == 7 && tail != 'Z') {
    throw std::invalid_argument("bad timestamp '" + text + "'");
  }
  using namespace std::chrono;
  const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
  if (!ymd.ok() || h < 0 || h > 23 || mi < 0 || mi > 59 || s < 0 || s > 59) {
    throw std::invalid_argument("bad timestamp '" + text + "'");
  }
  if (s != 0) throw std::invalid_argument("timestamp '" + text + "' not on a whole minute");
  const auto days = sys_days{ymd}.time_since_epoch().count();
  return static_cast<std::int64_t>(days) * 1440 + h * 60 + mi;
}

std::string format_timestamp(std::int64_t minutes) {
  using namespace std::chrono;
  std::int64_t days = minutes / 1440;
  std::int64_t rem = minutes % 1440;
  if (rem < 0) {
    rem += 1440;
    --days;
  }
  const year_month_day ymd{sys_days{std::chrono::days{days}}};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:00", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                static_cast<int>(rem / 60), static_cast<int>(rem % 60));
  return buf;
}

std::string TimeSeries::timestamp(std::size_t i) const {
  return format_timestamp(start + static_cast<std::int64_t>(i) * step_minutes);
}

std::vector<std::string> TimeSeries::timestamps() const {
  std::vector<std::string> out;
  out.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) out.push_back(timestamp(i));
  return out;
}

namespace {

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  const auto e = s.find_last_not_of(" \t\r");
  if (b == std::string::npos) return {};
  return s.substr(b, e - b + 1);
}

}  // namespace

TimeSeries read_timeseries(std::istream& in, int expected_step_minutes, const std::string& source,
                           const std::optional<std::string>& expected_unit) {
  TimeSeries ts;
  ts.step_minutes = expected_step_minutes;
  std::string line;
  std::size_t lineno = 0;
  bool header = false;
  std::int64_t prev = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto pos = line.find("unit:");
      if (pos != std::string::npos && !header) ts.unit = trim(line.substr(pos + 5));
      continue;
    }
    if (!header) {
      if (line != "timestamp,value") {
        throw ParseError(source, lineno, "expected header 'timestamp,value', got '" + line + "'");
      }
      header = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos) {
      throw ParseError(source, lineno, "expected two fields");
    }
    std::int64_t t = 0;
    try {
      t = parse_timestamp(trim(line.substr(0, comma)));
    } catch (const std::invalid_argument& e) {
      throw ParseError(source, lineno, e.what());
    }
    const std::string field = trim(line.substr(comma + 1));
    double v = 0.0;
    const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
    if (field.empty() || res.ec != std::errc{} || res.ptr != field.data() + field.size() ||
        !std::isfinite(v)) {
      throw ParseError(source, lineno, "bad value '" + field + "'");
    }
    if (ts.values.empty()) {
      ts.start = t;
    } else if (t - prev != expected_step_minutes) {
      std::ostringstream msg;
      msg << source << ":" << lineno << ": step of " << (t - prev) << " min, expected "
          << expected_step_minutes << (t == prev ? " (duplicate timestamp)" : "");
      throw SeriesError(msg.str());
    }
    prev = t;
    ts.values.push_back(v);
  }
  if (!header) throw ParseError(source, lineno, "missing header 'timestamp,value'");
  if (ts.values.empty()) throw SeriesError(source + ": no data rows");
  if (expected_unit && !ts.unit.empty() && ts.unit != *expected_unit) {
    throw SeriesError(source + ": unit '" + ts.unit + "' does not match expected '" +
                      *expected_unit + "'");
  }
  return ts;
}

TimeSeries load_timeseries(const std::filesystem::path& path, int expected_step_minutes,
                           const std::optional<std::string>& expected_unit) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_timeseries(in, expected_step_minutes, path.string(), expected_unit);
}

void write_timeseries(std::ostream& out, const TimeSeries& ts) {
  if (!ts.unit.empty()) out << "# unit: " << ts.unit << '\n';
  out << "timestamp,value\n";
  char buf[64];
  for (std::size_t i = 0; i < ts.values.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", ts.values[i]);
    out << ts.timestamp(i) << ',' << buf << '\n';
  }
}

void save_timeseries(const std::filesystem::path& path, const TimeSeries& ts) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_timeseries(out, ts);
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

TimeSeries moving_average_schedule(const TimeSeries& forecast, int window_minutes) {
  if (window_minutes <= 0 || forecast.step_minutes <= 0 ||
      window_minutes % forecast.step_minutes != 0) {
    throw std::invalid_argument("moving average window " + std::to_string(window_minutes) +
                                " min is not a positive multiple of the " +
                                std::to_string(forecast.step_minutes) + " min step");
  }
  const auto k = static_cast<std::ptrdiff_t>(window_minutes / forecast.step_minutes);
  const std::ptrdiff_t back = (k - 1) / 2;
  const std::ptrdiff_t ahead = k - 1 - back;
  const auto n = static_cast<std::ptrdiff_t>(forecast.values.size());
  TimeSeries out = forecast;
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const std::ptrdiff_t lo = std::max<std::ptrdiff_t>(0, i - back);
    const std::ptrdiff_t hi = std::min<std::ptrdiff_t>(n - 1, i + ahead);
    double sum = 0.0;
    for (std::ptrdiff_t j = lo; j <= hi; ++j) sum += forecast.values[static_cast<std::size_t>(j)];
    out.values[static_cast<std::size_t>(i)] = sum / static_cast<double>(hi - lo + 1);
  }
  return out;
}

}  // namespace bess::io
