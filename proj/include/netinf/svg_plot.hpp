#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace netinf {

/// Self-contained line chart, one polyline per series with a legend.
struct PlotSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  double x_min = 0.0, x_max = 1.0;
  double y_min = 0.0, y_max = 1.0;
  std::vector<PlotSeries> series;
};

void write_svg_plot(const std::filesystem::path& path, const PlotSpec& spec);

}  // namespace netinf
