#pragma once

#include <string>
#include <vector>

namespace rnmf {

struct PlotSeries {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> error;  // half-height of the error bar at each point
};

struct LineChart {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<PlotSeries> series;
  int width = 640;
  int height = 420;
};

/// Standalone SVG document: one polyline per series with markers and error
/// bars. A single-point series is drawn as a marker only.
std::string render_line_chart(const LineChart& chart);

}  // namespace rnmf
