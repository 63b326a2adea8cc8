#ifndef SEBOOST_SVG_HPP
#define SEBOOST_SVG_HPP

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

#include "seboost/data.hpp"

namespace seboost {

struct Curve {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

namespace detail {

inline std::string svg_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

inline std::string xml_escape(const std::string& s) {
  std::string out;
  for (const char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace detail

/// Loss-curve plot: linear x, log10 y, fixed palette, legend on the right.
/// Pure string assembly, byte-deterministic for identical inputs.
inline std::string render_loss_svg(const std::string& title,
                                   const std::string& x_label,
                                   const std::vector<Curve>& curves) {
  constexpr double kWidth = 960, kHeight = 560;
  constexpr double kLeft = 80, kRight = 740, kTop = 50, kBottom = 500;
  static const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                   "#9467bd", "#8c564b", "#17becf", "#7f7f7f"};
  constexpr int kPaletteSize = 8;

  double x_min = std::numeric_limits<double>::infinity();
  double x_max = -x_min;
  double y_min = std::numeric_limits<double>::infinity();
  double y_max = 0.0;
  for (const auto& c : curves) {
    for (const double x : c.x) {
      x_min = std::min(x_min, x);
      x_max = std::max(x_max, x);
    }
    for (const double y : c.y) {
      if (std::isfinite(y) && y > 0.0) {
        y_min = std::min(y_min, y);
        y_max = std::max(y_max, y);
      }
    }
  }
  if (!std::isfinite(x_min)) {
    x_min = 0.0;
    x_max = 1.0;
  }
  if (x_max <= x_min) x_max = x_min + 1.0;
  if (y_max <= 0.0) {
    y_min = 0.1;
    y_max = 1.0;
  }
  if (y_min >= y_max) y_min = y_max / 10.0;
  const double ly_min = std::floor(std::log10(y_min));
  const double ly_max = std::ceil(std::log10(y_max));
  const double ly_span = std::max(1.0, ly_max - ly_min);

  const auto px = [&](double x) {
    return kLeft + (x - x_min) / (x_max - x_min) * (kRight - kLeft);
  };
  const auto py = [&](double y) {
    const double ly = std::log10(std::max(y, std::pow(10.0, ly_min)));
    return kBottom - (ly - ly_min) / ly_span * (kBottom - kTop);
  };

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         detail::svg_num(kWidth) + "\" height=\"" + detail::svg_num(kHeight) +
         "\" viewBox=\"0 0 " + detail::svg_num(kWidth) + " " +
         detail::svg_num(kHeight) + "\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out += "<text x=\"" + detail::svg_num((kLeft + kRight) / 2) +
         "\" y=\"28\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"18\">" +
         detail::xml_escape(title) + "</text>\n";

  // Axes.
  out += "<line x1=\"" + detail::svg_num(kLeft) + "\" y1=\"" +
         detail::svg_num(kBottom) + "\" x2=\"" + detail::svg_num(kRight) +
         "\" y2=\"" + detail::svg_num(kBottom) +
         "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  out += "<line x1=\"" + detail::svg_num(kLeft) + "\" y1=\"" +
         detail::svg_num(kTop) + "\" x2=\"" + detail::svg_num(kLeft) +
         "\" y2=\"" + detail::svg_num(kBottom) +
         "\" stroke=\"black\" stroke-width=\"1\"/>\n";

  // Horizontal grid and labels at decade boundaries.
  for (double d = ly_min; d <= ly_max + 0.5; d += 1.0) {
    const double y = kBottom - (d - ly_min) / ly_span * (kBottom - kTop);
    out += "<line x1=\"" + detail::svg_num(kLeft) + "\" y1=\"" +
           detail::svg_num(y) + "\" x2=\"" + detail::svg_num(kRight) +
           "\" y2=\"" + detail::svg_num(y) +
           "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    out += "<text x=\"" + detail::svg_num(kLeft - 8) + "\" y=\"" +
           detail::svg_num(y + 4) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" "
           "font-size=\"12\">1e" +
           detail::svg_num(d) + "</text>\n";
  }

  // Five x ticks.
  for (int t = 0; t <= 4; ++t) {
    const double x = x_min + (x_max - x_min) * t / 4.0;
    out += "<line x1=\"" + detail::svg_num(px(x)) + "\" y1=\"" +
           detail::svg_num(kBottom) + "\" x2=\"" + detail::svg_num(px(x)) +
           "\" y2=\"" + detail::svg_num(kBottom + 5) +
           "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    out += "<text x=\"" + detail::svg_num(px(x)) + "\" y=\"" +
           detail::svg_num(kBottom + 20) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"12\">" +
           detail::svg_num(x) + "</text>\n";
  }
  out += "<text x=\"" + detail::svg_num((kLeft + kRight) / 2) + "\" y=\"" +
         detail::svg_num(kBottom + 42) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"14\">" +
         detail::xml_escape(x_label) + "</text>\n";

  // Curves.
  for (std::size_t i = 0; i < curves.size(); ++i) {
    const auto& c = curves[i];
    const char* color = kPalette[i % kPaletteSize];
    const bool dashed = (i / kPaletteSize) % 2 == 1;
    std::string points;
    const std::size_t n = std::min(c.x.size(), c.y.size());
    for (std::size_t k = 0; k < n; ++k) {
      if (!std::isfinite(c.y[k])) continue;
      points += detail::svg_num(px(c.x[k])) + "," +
                detail::svg_num(py(c.y[k])) + " ";
    }
    out += "<polyline fill=\"none\" stroke=\"";
    out += color;
    out += "\" stroke-width=\"1.5\"";
    if (dashed) out += " stroke-dasharray=\"6 3\"";
    out += " points=\"" + points + "\"/>\n";

    // Legend entry.
    const double ly = kTop + 8 + 18.0 * static_cast<double>(i);
    out += "<line x1=\"" + detail::svg_num(kRight + 16) + "\" y1=\"" +
           detail::svg_num(ly) + "\" x2=\"" + detail::svg_num(kRight + 44) +
           "\" y2=\"" + detail::svg_num(ly) + "\" stroke=\"";
    out += color;
    out += "\" stroke-width=\"2\"";
    if (dashed) out += " stroke-dasharray=\"6 3\"";
    out += "/>\n";
    out += "<text x=\"" + detail::svg_num(kRight + 50) + "\" y=\"" +
           detail::svg_num(ly + 4) +
           "\" font-family=\"sans-serif\" font-size=\"12\">" +
           detail::xml_escape(c.label) + "</text>\n";
  }

  out += "</svg>\n";
  return out;
}

inline void write_svg(const std::string& content, const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << content;
  if (!out) throw IoError("write failed on " + path);
}

}  // namespace seboost

#endif  // SEBOOST_SVG_HPP
