#pragma once

// Contour plots as CSV (family,level,X,Y,x,y) and SVG 1.1.

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "lcmap.hpp"

namespace lorentz {

/// Twelve significant digits, the precision shared by CSV and SVG output.
inline std::string fmt12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v == 0.0 ? 0.0 : v);
  return buf;
}

struct Window {
  Interval x{-2.0, 2.0};
  Interval y{-2.0, 2.0};
  bool contains(PointXY p) const { return x.contains(p.x) && y.contains(p.y); }
};

struct Highlight {
  Family family = Family::u;
  double level = 0;
};

struct RenderOptions {
  Window window;
  std::vector<double> levels_u;
  std::vector<double> levels_v;
  int resolution = 401;
  std::vector<Highlight> highlights;
  double pixels = 600;
};

struct RenderedContour {
  Family family = Family::u;
  double level = 0;
  bool highlighted = false;
  std::vector<std::vector<PointChar>> polylines;  // clipped to the window
};

struct RenderResult {
  std::vector<RenderedContour> contours;
  std::string svg;
  std::string csv;
};

inline std::string contour_csv_header() { return "family,level,X,Y,x,y\n"; }

inline void append_csv_row(std::string& out, Family fam, double level, PointChar c) {
  const PointXY p = from_characteristic(c);
  out += std::string(family_name(fam)) + ',' + fmt12(level) + ',' + fmt12(c.X) + ',' + fmt12(c.Y) + ',' +
         fmt12(p.x) + ',' + fmt12(p.y) + '\n';
}

/// CSV for raw contour extraction output.
inline std::string contour_csv(const std::vector<ContourCurve>& curves) {
  std::string out = contour_csv_header();
  for (const ContourCurve& c : curves)
    for (const PointChar& p : c.pts_char) append_csv_row(out, c.family, c.level, p);
  return out;
}

/// Contour of one level, clipped to the window; polylines break where they leave it.
inline RenderedContour render_level(const LCMap& m, Family fam, double level, const Window& w, int resolution) {
  RenderedContour rc;
  rc.family = fam;
  rc.level = level;
  const Interval Xs{w.x.lo + w.y.lo, w.x.hi + w.y.hi};
  const Interval Ys{w.y.lo - w.x.hi, w.y.hi - w.x.lo};
  std::vector<double> xs;
  for (int i = 0; i < resolution; ++i) {
    double X = Xs.lo + Xs.width() * i / (resolution - 1);
    X = std::clamp(X, m.h().domain().lo, m.h().domain().hi);
    if (xs.empty() || X != xs.back()) xs.push_back(X);
  }
  ContourOptions opt;
  opt.y_window = Ys;
  ContourResult res;
  try {
    res = contour(m, fam, level, xs, opt);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::range && e.kind() != ErrorKind::domain) throw;
    return rc;
  }
  for (const ContourCurve& br : res.branches) {
    std::vector<PointChar> cur;
    for (const PointChar& p : br.pts_char) {
      if (w.contains(from_characteristic(p))) {
        cur.push_back(p);
      } else if (!cur.empty()) {
        if (cur.size() > 1) rc.polylines.push_back(std::move(cur));
        cur.clear();
      }
    }
    if (cur.size() > 1) rc.polylines.push_back(std::move(cur));
  }
  return rc;
}

inline RenderResult render_contours(const LCMap& m, const RenderOptions& opt) {
  if (!(opt.window.x.width() > 0) || !(opt.window.y.width() > 0) || !opt.window.x.is_finite() ||
      !opt.window.y.is_finite())
    throw Error(ErrorKind::empty_window, "render window must be finite and nondegenerate");
  if (opt.resolution < 2) throw Error(ErrorKind::empty_window, "resolution must be at least 2");

  std::vector<std::pair<Family, double>> levels;
  for (double l : opt.levels_u) levels.emplace_back(Family::u, l);
  for (double l : opt.levels_v) levels.emplace_back(Family::v, l);
  for (const Highlight& h : opt.highlights) {
    bool present = false;
    for (const auto& [f, l] : levels) present = present || (f == h.family && l == h.level);
    if (!present) levels.emplace_back(h.family, h.level);
  }

  RenderResult out;
  for (const auto& [fam, level] : levels) {
    RenderedContour rc = render_level(m, fam, level, opt.window, opt.resolution);
    for (const Highlight& h : opt.highlights) rc.highlighted = rc.highlighted || (h.family == fam && h.level == level);
    out.contours.push_back(std::move(rc));
  }

  out.csv = contour_csv_header();
  for (const RenderedContour& rc : out.contours)
    for (const auto& line : rc.polylines)
      for (const PointChar& p : line) append_csv_row(out.csv, rc.family, rc.level, p);

  const Window& w = opt.window;
  const double scale = opt.pixels / std::max(w.x.width(), w.y.width());
  const double width = w.x.width() * scale;
  const double height = w.y.width() * scale;
  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << fmt12(width) << "\" height=\""
      << fmt12(height) << "\" viewBox=\"0 0 " << fmt12(width) << ' ' << fmt12(height) << "\">\n"
      << "<style>\n"
      << "  polyline { fill: none; stroke-width: 1.2; vector-effect: non-scaling-stroke; }\n"
      << "  .u { stroke: #1f5fbf; }\n"
      << "  .v { stroke: #d9801a; stroke-dasharray: 4 2; }\n"
      << "  .hl-u { stroke: #1a9b3a; stroke-width: 2.5; }\n"
      << "  .hl-v { stroke: #cc1f1f; stroke-width: 2.5; }\n"
      << "  .origin { fill: #7a4a1e; }\n"
      << "  .frame { fill: none; stroke: #444; stroke-width: 0.01; }\n"
      << "</style>\n"
      << "<g transform=\"translate(" << fmt12(-w.x.lo * scale) << ',' << fmt12(w.y.hi * scale) << ") scale("
      << fmt12(scale) << ',' << fmt12(-scale) << ")\">\n"
      << "<rect class=\"frame\" x=\"" << fmt12(w.x.lo) << "\" y=\"" << fmt12(w.y.lo) << "\" width=\""
      << fmt12(w.x.width()) << "\" height=\"" << fmt12(w.y.width()) << "\"/>\n";
  for (const RenderedContour& rc : out.contours) {
    const std::string cls = std::string(rc.highlighted ? "hl-" : "") + std::string(family_name(rc.family));
    for (const auto& line : rc.polylines) {
      svg << "<polyline class=\"" << cls << "\" data-level=\"" << fmt12(rc.level) << "\" points=\"";
      for (std::size_t i = 0; i < line.size(); ++i) {
        const PointXY p = from_characteristic(line[i]);
        svg << (i ? " " : "") << fmt12(p.x) << ',' << fmt12(p.y);
      }
      svg << "\"/>\n";
    }
  }
  if (w.contains({0.0, 0.0}))
    svg << "<circle class=\"origin\" cx=\"0\" cy=\"0\" r=\"" << fmt12(4.0 / scale) << "\"/>\n";
  svg << "</g>\n</svg>\n";
  out.svg = svg.str();
  return out;
}

}  // namespace lorentz
