#pragma once

// Minimal SVG 1.1 line-plot renderer for the boxplot displays. Each curve is
// emitted inside a named group so downstream tooling can address the median,
// quartiles, and extremes.

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "elastic/boxplots.hpp"

namespace elastic {

struct SvgCurve {
  std::string name;
  std::string color;
  std::vector<double> values;
};

namespace detail {

inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

inline std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace detail

// Renders curves sharing abscissae xs into a fixed 640x480 viewport with a
// plain axis frame and a title.
inline std::string render_curves_svg(const std::vector<double>& xs,
                                     const std::vector<SvgCurve>& curves,
                                     const std::string& title) {
  const double width = 640.0;
  const double height = 480.0;
  const double margin = 48.0;

  double ymin = 0.0;
  double ymax = 1.0;
  bool first = true;
  for (const auto& c : curves) {
    for (double v : c.values) {
      if (first) {
        ymin = ymax = v;
        first = false;
      } else {
        ymin = std::min(ymin, v);
        ymax = std::max(ymax, v);
      }
    }
  }
  if (!(ymax > ymin)) {
    ymax += 0.5;
    ymin -= 0.5;
  }
  const double pad = 0.05 * (ymax - ymin);
  ymin -= pad;
  ymax += pad;
  const double xmin = xs.front();
  const double xmax = xs.back();

  auto px = [&](double x) {
    return margin + (x - xmin) / (xmax - xmin) * (width - 2.0 * margin);
  };
  auto py = [&](double y) {
    return height - margin - (y - ymin) / (ymax - ymin) * (height - 2.0 * margin);
  };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  svg << "  <title>" << detail::xml_escape(title) << "</title>\n";
  svg << "  <rect x=\"" << margin << "\" y=\"" << margin << "\" width=\"" << width - 2 * margin
      << "\" height=\"" << height - 2 * margin
      << "\" fill=\"none\" stroke=\"#888888\" stroke-width=\"1\"/>\n";
  svg << "  <text x=\"" << width / 2 << "\" y=\"" << margin - 16
      << "\" text-anchor=\"middle\" font-size=\"14\">" << detail::xml_escape(title)
      << "</text>\n";
  svg << "  <text x=\"" << margin << "\" y=\"" << height - margin + 18
      << "\" font-size=\"11\">" << detail::fmt(xmin) << "</text>\n";
  svg << "  <text x=\"" << width - margin << "\" y=\"" << height - margin + 18
      << "\" text-anchor=\"end\" font-size=\"11\">" << detail::fmt(xmax) << "</text>\n";
  svg << "  <text x=\"" << margin - 4 << "\" y=\"" << height - margin
      << "\" text-anchor=\"end\" font-size=\"11\">" << detail::fmt(ymin) << "</text>\n";
  svg << "  <text x=\"" << margin - 4 << "\" y=\"" << margin + 4
      << "\" text-anchor=\"end\" font-size=\"11\">" << detail::fmt(ymax) << "</text>\n";

  for (const auto& c : curves) {
    svg << "  <g id=\"" << detail::xml_escape(c.name) << "\" fill=\"none\" stroke=\"" << c.color
        << "\" stroke-width=\"1.5\">\n    <polyline points=\"";
    for (std::size_t i = 0; i < xs.size() && i < c.values.size(); ++i) {
      if (i > 0) svg << ' ';
      svg << detail::fmt(px(xs[i])) << ',' << detail::fmt(py(c.values[i]));
    }
    svg << "\"/>\n  </g>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

// Classic box-and-whisker glyph for the translation component, with sample
// values drawn as ticks beside the box.
inline std::string render_translation_svg(const TranslationBoxplot& box,
                                          const std::vector<double>& values,
                                          const std::string& title) {
  const double width = 320.0;
  const double height = 480.0;
  const double margin = 48.0;

  double ymin = box.lower_whisker;
  double ymax = box.upper_whisker;
  for (double v : values) {
    ymin = std::min(ymin, v);
    ymax = std::max(ymax, v);
  }
  if (!(ymax > ymin)) {
    ymax += 0.5;
    ymin -= 0.5;
  }
  const double pad = 0.08 * (ymax - ymin);
  ymin -= pad;
  ymax += pad;
  auto py = [&](double y) {
    return height - margin - (y - ymin) / (ymax - ymin) * (height - 2.0 * margin);
  };
  const double cx = width / 2.0;
  const double bw = 70.0;

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  svg << "  <title>" << detail::xml_escape(title) << "</title>\n";
  svg << "  <text x=\"" << width / 2 << "\" y=\"" << margin - 16
      << "\" text-anchor=\"middle\" font-size=\"14\">" << detail::xml_escape(title)
      << "</text>\n";
  svg << "  <g id=\"box\" stroke=\"black\" fill=\"none\" stroke-width=\"1.5\">\n";
  svg << "    <rect x=\"" << cx - bw / 2 << "\" y=\"" << py(box.q3) << "\" width=\"" << bw
      << "\" height=\"" << py(box.q1) - py(box.q3) << "\"/>\n";
  svg << "    <line x1=\"" << cx - bw / 2 << "\" y1=\"" << py(box.median) << "\" x2=\""
      << cx + bw / 2 << "\" y2=\"" << py(box.median) << "\" stroke-width=\"2.5\"/>\n";
  svg << "    <line x1=\"" << cx << "\" y1=\"" << py(box.q3) << "\" x2=\"" << cx << "\" y2=\""
      << py(box.upper_whisker) << "\"/>\n";
  svg << "    <line x1=\"" << cx << "\" y1=\"" << py(box.q1) << "\" x2=\"" << cx << "\" y2=\""
      << py(box.lower_whisker) << "\"/>\n";
  svg << "    <line x1=\"" << cx - bw / 4 << "\" y1=\"" << py(box.upper_whisker) << "\" x2=\""
      << cx + bw / 4 << "\" y2=\"" << py(box.upper_whisker) << "\"/>\n";
  svg << "    <line x1=\"" << cx - bw / 4 << "\" y1=\"" << py(box.lower_whisker) << "\" x2=\""
      << cx + bw / 4 << "\" y2=\"" << py(box.lower_whisker) << "\"/>\n";
  svg << "  </g>\n";
  svg << "  <g id=\"outliers\" stroke=\"red\" fill=\"none\">\n";
  for (std::size_t idx : box.outlier_indices) {
    if (idx < values.size()) {
      svg << "    <circle cx=\"" << cx << "\" cy=\"" << py(values[idx]) << "\" r=\"3\"/>\n";
    }
  }
  svg << "  </g>\n";
  svg << "  <text x=\"" << cx - bw / 2 - 6 << "\" y=\"" << py(box.median) + 4
      << "\" text-anchor=\"end\" font-size=\"11\">" << detail::fmt(box.median) << "</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

// Boxplot color code: median black, quartiles blue/green, extremes red and
// magenta.
inline std::vector<SvgCurve> amplitude_boxplot_curves(const AmplitudeBoxplot& box,
                                                      const Decomposition& dec) {
  std::vector<SvgCurve> curves;
  if (!box.degenerate) {
    if (box.extreme1_index) {
      curves.push_back({"extreme1", "red", dec.amplitudes[*box.extreme1_index].values()});
    }
    if (box.extreme3_index) {
      curves.push_back({"extreme3", "magenta", dec.amplitudes[*box.extreme3_index].values()});
    }
    curves.push_back({"q1", "blue", dec.amplitudes[box.q1_index].values()});
    curves.push_back({"q3", "green", dec.amplitudes[box.q3_index].values()});
  }
  curves.push_back({"median", "black", dec.amp_median.values()});
  return curves;
}

inline std::vector<SvgCurve> phase_boxplot_curves(const PhaseBoxplot& box,
                                                  const Decomposition& dec) {
  std::vector<SvgCurve> curves;
  if (!box.degenerate) {
    if (box.extreme1_index) {
      curves.push_back({"extreme1", "red", dec.phases[*box.extreme1_index].values()});
    }
    if (box.extreme3_index) {
      curves.push_back({"extreme3", "magenta", dec.phases[*box.extreme3_index].values()});
    }
    curves.push_back({"q1", "blue", box.q1.values()});
    curves.push_back({"q3", "green", box.q3.values()});
  }
  curves.push_back({"median", "black", box.median.values()});
  return curves;
}

}  // namespace elastic
