#pragma once

#include <string>
#include <vector>

namespace stein::cli {

struct SvgSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  bool line = false; // polyline when true, dots otherwise
};

struct SvgSegment {
  double x0, y0, x1, y1;
  std::string label;
};

/// 800x600 plot with axis lines and ticks at min/mid/max of each axis.
struct SvgPlot {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<SvgSeries> series;
  std::vector<SvgSegment> segments;
  bool equal_aspect = false;

  std::string render() const;
};

} // namespace stein::cli
