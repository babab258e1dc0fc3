#include "bess/io/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace bess::io {

namespace {

constexpr double kWidth = 960.0;
constexpr double kAreaHeight = 300.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 190.0;  // legend column
constexpr double kTop = 40.0;
constexpr double kGap = 50.0;
constexpr double kBottom = 60.0;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string px(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

double nice_step(double span, int target) {
  const double raw = span / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double r = raw / mag;
  const double m = r < 1.5 ? 1.0 : r < 3.0 ? 2.0 : r < 7.0 ? 5.0 : 10.0;
  return m * mag;
}

}  // namespace

std::string render_svg(const Chart& chart) {
  if (chart.areas.empty()) throw std::invalid_argument("chart has no plot areas");
  std::size_t n = 0;
  for (const auto& a : chart.areas) {
    if (a.series.empty()) throw std::invalid_argument("plot area '" + a.y_label + "' is empty");
    for (const auto& s : a.series) {
      if (n == 0) n = s.y.size();
      if (s.y.size() != n) throw std::invalid_argument("series '" + s.label + "' length differs");
    }
  }
  if (n == 0) throw std::invalid_argument("chart has no data points");

  const double height = kTop + chart.areas.size() * kAreaHeight +
                        (chart.areas.size() - 1) * kGap + kBottom;
  const double plot_w = kWidth - kLeft - kRight;
  const double x_min = 0.0;
  const double x_max = static_cast<double>(n - 1);
  auto sx = [&](double x) {
    return kLeft + (x_max > x_min ? (x - x_min) / (x_max - x_min) : 0.5) * plot_w;
  };

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << px(kWidth) << "\" height=\""
    << px(height) << "\" viewBox=\"0 0 " << px(kWidth) << ' ' << px(height)
    << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  o << "<title>" << escape(chart.title) << "</title>\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << px(kWidth / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">"
    << escape(chart.title) << "</text>\n";

  for (std::size_t ai = 0; ai < chart.areas.size(); ++ai) {
    const PlotArea& area = chart.areas[ai];
    double y_min = std::numeric_limits<double>::infinity();
    double y_max = -y_min;
    for (const auto& s : area.series) {
      for (double v : s.y) {
        y_min = std::min(y_min, v);
        y_max = std::max(y_max, v);
      }
    }
    // Padded drawing range; the attributes keep the raw extents.
    double lo = y_min, hi = y_max;
    if (hi - lo < 1e-12 * std::max(1.0, std::abs(hi))) {
      const double pad = std::max(0.5, 0.1 * std::abs(hi));
      lo -= pad;
      hi += pad;
    } else {
      const double pad = 0.05 * (hi - lo);
      lo -= pad;
      hi += pad;
    }
    const double top = kTop + ai * (kAreaHeight + kGap);
    const double bottom = top + kAreaHeight;
    auto sy = [&](double y) { return bottom - (y - lo) / (hi - lo) * kAreaHeight; };

    o << "<g class=\"plot-area\" data-x-min=\"" << fmt(x_min) << "\" data-x-max=\"" << fmt(x_max)
      << "\" data-y-min=\"" << fmt(y_min) << "\" data-y-max=\"" << fmt(y_max) << "\">\n";
    o << "<rect x=\"" << px(kLeft) << "\" y=\"" << px(top) << "\" width=\"" << px(plot_w)
      << "\" height=\"" << px(kAreaHeight) << "\" fill=\"none\" stroke=\"#444\"/>\n";

    const double ystep = nice_step(hi - lo, 5);
    for (double v = std::ceil(lo / ystep) * ystep; v <= hi + 1e-9 * ystep; v += ystep) {
      const double y = sy(v);
      o << "<line x1=\"" << px(kLeft) << "\" y1=\"" << px(y) << "\" x2=\"" << px(kLeft + plot_w)
        << "\" y2=\"" << px(y) << "\" stroke=\"#ddd\"/>";
      o << "<text x=\"" << px(kLeft - 6) << "\" y=\"" << px(y + 4)
        << "\" text-anchor=\"end\">" << fmt(std::abs(v) < 1e-12 * ystep ? 0.0 : v)
        << "</text>\n";
    }
    o << "<text transform=\"translate(" << px(20) << ',' << px((top + bottom) / 2)
      << ") rotate(-90)\" text-anchor=\"middle\">" << escape(area.y_label) << "</text>\n";

    if (ai + 1 == chart.areas.size()) {
      const std::size_t every = std::max<std::size_t>(1, (n + 7) / 8);
      for (std::size_t i = 0; i < n; i += every) {
        const double x = sx(static_cast<double>(i));
        o << "<line x1=\"" << px(x) << "\" y1=\"" << px(bottom) << "\" x2=\"" << px(x)
          << "\" y2=\"" << px(bottom + 5) << "\" stroke=\"#444\"/>";
        const std::string label = i < chart.x_ticks.size() ? chart.x_ticks[i] : fmt(i);
        o << "<text x=\"" << px(x) << "\" y=\"" << px(bottom + 18)
          << "\" text-anchor=\"middle\" font-size=\"10\">" << escape(label) << "</text>\n";
      }
      o << "<text x=\"" << px(kLeft + plot_w / 2) << "\" y=\"" << px(bottom + 42)
        << "\" text-anchor=\"middle\">" << escape(chart.x_label) << "</text>\n";
    }

    for (std::size_t si = 0; si < area.series.size(); ++si) {
      const Series& s = area.series[si];
      o << "<polyline class=\"series\" data-label=\"" << escape(s.label)
        << "\" fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.6\"";
      if (s.dashed) o << " stroke-dasharray=\"6 4\"";
      o << " points=\"";
      for (std::size_t i = 0; i < n; ++i) {
        o << (i ? " " : "") << px(sx(static_cast<double>(i))) << ',' << px(sy(s.y[i]));
      }
      o << "\"/>\n";
      const double ly = top + 16 + 18 * si;
      const double lx = kLeft + plot_w + 12;
      o << "<line x1=\"" << px(lx) << "\" y1=\"" << px(ly) << "\" x2=\"" << px(lx + 24)
        << "\" y2=\"" << px(ly) << "\" stroke=\"" << s.color << "\" stroke-width=\"2\""
        << (s.dashed ? " stroke-dasharray=\"6 4\"" : "") << "/>";
      o << "<text x=\"" << px(lx + 30) << "\" y=\"" << px(ly + 4) << "\" font-size=\"11\">"
        << escape(s.label) << "</text>\n";
    }
    o << "</g>\n";
  }
  o << "</svg>\n";
  return o.str();
}

std::vector<Chart> trajectory_charts(const Trajectory& t) {
  std::vector<std::string> ticks;
  for (const auto& ts : t.timestamps) {
    // 2024-06-01T13:45:00 -> 13:45
    const auto pos = ts.find('T');
    ticks.push_back(pos != std::string::npos && ts.size() >= pos + 6 ? ts.substr(pos + 1, 5) : ts);
  }
  const std::vector<double>& p_sch = t.at("P_sch");
  std::vector<double> neg_ch = t.at("P_ch");
  for (double& v : neg_ch) v = -v;

  Chart a{"(a) schedule tracking", "time", ticks, {}};
  a.areas.push_back(PlotArea{"power (MW)",
                             {{"P_sch", p_sch, "#1f77b4", false},
                              {"band lower", t.at("band_lower"), "#7f7f7f", true},
                              {"band upper", t.at("band_upper"), "#7f7f7f", true},
                              {"P_wind_f", t.at("P_wind_f"), "#2ca02c", false},
                              {"P_joint", t.at("P_joint"), "#d62728", false}}});

  Chart b{"(b) BESS and out-of-limit power", "time", ticks, {}};
  b.areas.push_back(PlotArea{"power (MW)",
                             {{"P_dis", t.at("P_dis"), "#ff7f0e", false},
                              {"-P_ch", neg_ch, "#9467bd", false},
                              {"P_out_lower", t.at("P_out_lower"), "#8c564b", true},
                              {"P_out_upper", t.at("P_out_upper"), "#e377c2", true}}});

  Chart c{"(c) SOC and diagnostic prices", "time", ticks, {}};
  c.areas.push_back(PlotArea{"SOC (p.u.)", {{"S_OC", t.at("S_OC"), "#17becf", false}}});
  c.areas.push_back(
      PlotArea{"price (currency/MWh, implementation-defined)",
               {{"unit throughput price (diagnostic)", t.at("unit_loss_price"), "#bcbd22", false},
                {"penalty price (diagnostic)", t.at("penalty_price"), "#7f7f7f", true}}});
  return {a, b, c};
}

std::vector<std::filesystem::path> render_plots(const std::filesystem::path& trajectory_csv,
                                                const std::filesystem::path& out_dir) {
  const Trajectory t = read_trajectory(trajectory_csv);
  if (t.size() == 0) throw std::invalid_argument("trajectory " + trajectory_csv.string() + " is empty");
  const auto charts = trajectory_charts(t);
  std::vector<std::string> svgs;
  for (const auto& c : charts) svgs.push_back(render_svg(c));

  std::filesystem::create_directories(out_dir);
  const char* names[] = {"fig_a_tracking.svg", "fig_b_power.svg", "fig_c_soc_price.svg"};
  std::vector<std::filesystem::path> out;
  for (std::size_t i = 0; i < svgs.size(); ++i) {
    const auto p = out_dir / names[i];
    std::ofstream f(p);
    if (!f) throw std::runtime_error("cannot write " + p.string());
    f << svgs[i];
    f.flush();
    if (!f) throw std::runtime_error("write failed: " + p.string());
    out.push_back(p);
  }
  return out;
}

}  // namespace bess::io
