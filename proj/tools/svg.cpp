#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace stein::cli {

namespace {

constexpr double kWidth = 800, kHeight = 600;
constexpr double kLeft = 80, kRight = 30, kTop = 50, kBottom = 60;

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string coord(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
    case '<': out += "&lt;"; break;
    case '>': out += "&gt;"; break;
    case '&': out += "&amp;"; break;
    default: out += ch;
    }
  }
  return out;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void include(double v) {
    if (!std::isfinite(v))
      return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void finish() {
    if (!(lo <= hi)) {
      lo = 0;
      hi = 1;
    }
    if (hi == lo) {
      lo -= 0.5;
      hi += 0.5;
    }
  }
};

} // namespace

std::string SvgPlot::render() const {
  Range xr, yr;
  for (const auto& s : series) {
    for (double v : s.x) xr.include(v);
    for (double v : s.y) yr.include(v);
  }
  for (const auto& g : segments) {
    xr.include(g.x0); xr.include(g.x1);
    yr.include(g.y0); yr.include(g.y1);
  }
  xr.finish();
  yr.finish();

  double plot_w = kWidth - kLeft - kRight;
  double plot_h = kHeight - kTop - kBottom;
  if (equal_aspect) {
    const double scale = std::min(plot_w / (xr.hi - xr.lo), plot_h / (yr.hi - yr.lo));
    plot_w = scale * (xr.hi - xr.lo);
    plot_h = scale * (yr.hi - yr.lo);
  }
  auto sx = [&](double x) { return kLeft + (x - xr.lo) / (xr.hi - xr.lo) * plot_w; };
  auto sy = [&](double y) { return kTop + plot_h - (y - yr.lo) / (yr.hi - yr.lo) * plot_h; };

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 600\" width=\"800\" "
         "height=\"600\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out += "<rect width=\"800\" height=\"600\" fill=\"white\"/>\n";
  out += "<text x=\"400\" y=\"25\" text-anchor=\"middle\" font-size=\"16\">" + escape(title) +
         "</text>\n";

  const double x_axis_y = kTop + plot_h;
  out += "<line x1=\"" + coord(kLeft) + "\" y1=\"" + coord(x_axis_y) + "\" x2=\"" +
         coord(kLeft + plot_w) + "\" y2=\"" + coord(x_axis_y) + "\" stroke=\"black\"/>\n";
  out += "<line x1=\"" + coord(kLeft) + "\" y1=\"" + coord(kTop) + "\" x2=\"" + coord(kLeft) +
         "\" y2=\"" + coord(x_axis_y) + "\" stroke=\"black\"/>\n";

  for (double t : {0.0, 0.5, 1.0}) {
    const double xv = xr.lo + t * (xr.hi - xr.lo);
    const double yv = yr.lo + t * (yr.hi - yr.lo);
    out += "<line x1=\"" + coord(sx(xv)) + "\" y1=\"" + coord(x_axis_y) + "\" x2=\"" +
           coord(sx(xv)) + "\" y2=\"" + coord(x_axis_y + 6) + "\" stroke=\"black\"/>\n";
    out += "<text x=\"" + coord(sx(xv)) + "\" y=\"" + coord(x_axis_y + 20) +
           "\" text-anchor=\"middle\">" + num(xv) + "</text>\n";
    out += "<line x1=\"" + coord(kLeft - 6) + "\" y1=\"" + coord(sy(yv)) + "\" x2=\"" +
           coord(kLeft) + "\" y2=\"" + coord(sy(yv)) + "\" stroke=\"black\"/>\n";
    out += "<text x=\"" + coord(kLeft - 10) + "\" y=\"" + coord(sy(yv) + 4) +
           "\" text-anchor=\"end\">" + num(yv) + "</text>\n";
  }
  out += "<text x=\"" + coord(kLeft + plot_w / 2) + "\" y=\"" + coord(x_axis_y + 45) +
         "\" text-anchor=\"middle\">" + escape(x_label) + "</text>\n";
  out += "<text x=\"20\" y=\"" + coord(kTop + plot_h / 2) +
         "\" text-anchor=\"middle\" transform=\"rotate(-90 20 " + coord(kTop + plot_h / 2) +
         ")\">" + escape(y_label) + "</text>\n";

  std::size_t color = 0;
  for (const auto& s : series) {
    const char* col = kPalette[color++ % std::size(kPalette)];
    const std::size_t n = std::min(s.x.size(), s.y.size());
    if (s.line) {
      out += "<polyline fill=\"none\" stroke=\"" + std::string(col) + "\" points=\"";
      for (std::size_t i = 0; i < n; ++i)
        out += coord(sx(s.x[i])) + "," + coord(sy(s.y[i])) + " ";
      out += "\"/>\n";
    } else {
      for (std::size_t i = 0; i < n; ++i)
        out += "<circle cx=\"" + coord(sx(s.x[i])) + "\" cy=\"" + coord(sy(s.y[i])) +
               "\" r=\"1.5\" fill=\"" + col + "\"/>\n";
    }
    if (!s.label.empty())
      out += "<text x=\"" + coord(kLeft + plot_w - 10) + "\" y=\"" +
             coord(kTop + 15 * static_cast<double>(color)) + "\" text-anchor=\"end\" fill=\"" +
             col + "\">" + escape(s.label) + "</text>\n";
  }
  for (const auto& g : segments) {
    out += "<line x1=\"" + coord(sx(g.x0)) + "\" y1=\"" + coord(sy(g.y0)) + "\" x2=\"" +
           coord(sx(g.x1)) + "\" y2=\"" + coord(sy(g.y1)) + "\" stroke=\"#555\"/>\n";
    if (!g.label.empty())
      out += "<text x=\"" + coord(sx(g.x1) + 4) + "\" y=\"" + coord(sy(g.y1) - 4) + "\">" +
             escape(g.label) + "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

} // namespace stein::cli
