#include "rnmf/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace rnmf {
namespace {

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
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

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void include(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void pad() {
    if (!std::isfinite(lo)) lo = 0.0, hi = 1.0;
    if (hi - lo < 1e-12) {
      const double d = std::max(std::abs(lo) * 0.1, 1e-3);
      lo -= d;
      hi += d;
    } else {
      const double d = 0.05 * (hi - lo);
      lo -= d;
      hi += d;
    }
  }
};

}  // namespace

std::string render_line_chart(const LineChart& chart) {
  const double left = 70, right = 130, top = 40, bottom = 55;
  const double plot_w = chart.width - left - right;
  const double plot_h = chart.height - top - bottom;

  Range xs, ys;
  for (const auto& s : chart.series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      const double e = i < s.error.size() ? s.error[i] : 0.0;
      xs.include(s.x[i]);
      ys.include(s.y[i] - e);
      ys.include(s.y[i] + e);
    }
  }
  xs.pad();
  ys.pad();
  auto px = [&](double x) { return left + (x - xs.lo) / (xs.hi - xs.lo) * plot_w; };
  auto py = [&](double y) { return top + (ys.hi - y) / (ys.hi - ys.lo) * plot_h; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << chart.width << "\" height=\"" << chart.height
      << "\" viewBox=\"0 0 " << chart.width << ' ' << chart.height << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << num(left + plot_w / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
      << escape(chart.title) << "</text>\n";

  // Axes and ticks.
  svg << "<g stroke=\"black\" stroke-width=\"1\">\n";
  svg << "<line x1=\"" << num(left) << "\" y1=\"" << num(top + plot_h) << "\" x2=\"" << num(left + plot_w)
      << "\" y2=\"" << num(top + plot_h) << "\"/>\n";
  svg << "<line x1=\"" << num(left) << "\" y1=\"" << num(top) << "\" x2=\"" << num(left) << "\" y2=\""
      << num(top + plot_h) << "\"/>\n";
  svg << "</g>\n";
  std::vector<double> xticks;
  for (const auto& s : chart.series) xticks.insert(xticks.end(), s.x.begin(), s.x.end());
  std::sort(xticks.begin(), xticks.end());
  xticks.erase(std::unique(xticks.begin(), xticks.end()), xticks.end());
  svg << "<g font-size=\"11\">\n";
  for (double x : xticks) {
    svg << "<text x=\"" << num(px(x)) << "\" y=\"" << num(top + plot_h + 16) << "\" text-anchor=\"middle\">"
        << tick_label(x) << "</text>\n";
  }
  for (int i = 0; i <= 4; ++i) {
    const double y = ys.lo + (ys.hi - ys.lo) * i / 4.0;
    svg << "<text x=\"" << num(left - 6) << "\" y=\"" << num(py(y) + 4) << "\" text-anchor=\"end\">"
        << tick_label(y) << "</text>\n";
  }
  svg << "</g>\n";
  svg << "<text x=\"" << num(left + plot_w / 2) << "\" y=\"" << num(chart.height - 12.0)
      << "\" text-anchor=\"middle\" font-size=\"13\">" << escape(chart.x_label) << "</text>\n";
  svg << "<text transform=\"translate(18," << num(top + plot_h / 2) << ") rotate(-90)\" text-anchor=\"middle\" "
      << "font-size=\"13\">" << escape(chart.y_label) << "</text>\n";

  for (std::size_t si = 0; si < chart.series.size(); ++si) {
    const auto& s = chart.series[si];
    const char* color = kPalette[si % (sizeof kPalette / sizeof *kPalette)];
    svg << "<g class=\"series\" data-name=\"" << escape(s.name) << "\">\n";
    if (s.x.size() > 1) {
      svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
      for (std::size_t i = 0; i < s.x.size(); ++i) svg << (i ? " " : "") << num(px(s.x[i])) << ',' << num(py(s.y[i]));
      svg << "\"/>\n";
    }
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      const double e = i < s.error.size() ? s.error[i] : 0.0;
      const double cx = px(s.x[i]);
      if (e > 0.0) {
        svg << "<path class=\"errorbar\" stroke=\"" << color << "\" d=\"M" << num(cx) << ' ' << num(py(s.y[i] - e))
            << " V" << num(py(s.y[i] + e)) << " M" << num(cx - 4) << ' ' << num(py(s.y[i] - e)) << " h8 M"
            << num(cx - 4) << ' ' << num(py(s.y[i] + e)) << " h8\"/>\n";
      }
      svg << "<circle class=\"marker\" cx=\"" << num(cx) << "\" cy=\"" << num(py(s.y[i])) << "\" r=\"3.5\" fill=\""
          << color << "\"/>\n";
    }
    svg << "</g>\n";
    const double ly = top + 14.0 + 20.0 * static_cast<double>(si);
    svg << "<line x1=\"" << num(left + plot_w + 15) << "\" y1=\"" << num(ly) << "\" x2=\"" << num(left + plot_w + 40)
        << "\" y2=\"" << num(ly) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << num(left + plot_w + 46) << "\" y=\"" << num(ly + 4) << "\" font-size=\"12\">"
        << escape(s.name) << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace rnmf
