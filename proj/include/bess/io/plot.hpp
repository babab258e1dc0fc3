#pragma once
// SVG line charts from a trajectory CSV. Each plot area carries its data
// extents as data-x-min/data-x-max/data-y-min/data-y-max attributes so tests
// and scripts can check the axes without rasterizing.

#include <filesystem>
#include <string>
#include <vector>

#include "bess/io/report.hpp"

namespace bess::io {

struct Series {
  std::string label;
  std::vector<double> y;  // x is the row index
  std::string color;
  bool dashed = false;
};

struct PlotArea {
  std::string y_label;
  std::vector<Series> series;
};

struct Chart {
  std::string title;
  std::string x_label;
  std::vector<std::string> x_ticks;  // row labels, thinned when drawn
  std::vector<PlotArea> areas;       // stacked vertically, shared x
};

// Throws std::invalid_argument on an empty chart or ragged series.
std::string render_svg(const Chart& chart);

// (a) schedule, tolerance band, joint output; (b) BESS and out-of-limit
// power; (c) SOC and the two diagnostic price curves.
std::vector<Chart> trajectory_charts(const Trajectory& t);

// Writes fig_a_tracking.svg, fig_b_power.svg, fig_c_soc_price.svg. Throws
// std::invalid_argument for an empty trajectory before touching out_dir.
std::vector<std::filesystem::path> render_plots(const std::filesystem::path& trajectory_csv,
                                                const std::filesystem::path& out_dir);

}  // namespace bess::io
