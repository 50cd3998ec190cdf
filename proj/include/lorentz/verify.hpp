#pragma once

// Geometric oracles: the rectangle rule on four curves and the signal-bounce
// construction of a quadrilateral's top side.

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "constructions.hpp"

namespace lorentz {

/// A monotone curve in one characteristic quadrant, C1..C4 in quadrants I..IV.
/// The solvers return nullopt when the line misses the curve.
struct Curve {
  std::function<PointChar(double)> at;  // s in [0,1] sweeps the curve
  std::function<std::optional<double>(double)> x_of_y;
  std::function<std::optional<double>(double)> y_of_x;
};

using CurveFamily = std::array<Curve, 4>;

namespace detail {

inline std::function<std::optional<double>(double)> guarded(std::function<double(double)> f) {
  return [f = std::move(f)](double t) -> std::optional<double> {
    try {
      const double v = f(t);
      if (std::isfinite(v)) return v;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::domain && e.kind() != ErrorKind::range) throw;
    }
    return std::nullopt;
  };
}

}  // namespace detail

/// Curves of a ray family, swept out to distance `reach` from the origin.
inline CurveFamily curves_from_rays(const RayFamily& input, double reach = 2.0) {
  const RayFamily rays = complete(input);
  std::array<MonotoneMap, 4> g;
  for (int j = 0; j < 4; ++j) {
    g[j] = detail::prepare_ray(rays.at(j + 1), "g" + std::to_string(j + 1));
    if (g[j].domain().lo < 0) g[j] = restrict(g[j], Interval::half_line());
  }
  using detail::guarded;
  CurveFamily c;
  c[0] = {[=](double s) { return PointChar{reach * s, g[0](reach * s)}; },
          guarded([=](double Y) { return g[0].inverse(Y); }), guarded([=](double X) { return g[0](X); })};
  c[1] = {[=](double s) { return PointChar{-g[1](reach * s), reach * s}; },
          guarded([=](double Y) { return -g[1](Y); }), guarded([=](double X) { return g[1].inverse(-X); })};
  c[2] = {[=](double s) { return PointChar{-reach * s, -g[2](reach * s)}; },
          guarded([=](double Y) { return -g[2].inverse(-Y); }), guarded([=](double X) { return -g[2](-X); })};
  c[3] = {[=](double s) { return PointChar{g[3](reach * s), -reach * s}; },
          guarded([=](double Y) { return g[3](-Y); }), guarded([=](double X) { return -g[3].inverse(X); })};
  return c;
}

/// Sides of a quadrilateral, including the axis scaling of its vertices.
inline CurveFamily curves_from_quad(const Quadrilateral& input) {
  const Quadrilateral q = complete(input);
  std::array<MonotoneMap, 4> g;
  for (int j = 0; j < 4; ++j) {
    g[j] = detail::prepare_side(q.at(j + 1), "g" + std::to_string(j + 1));
    if (g[j].domain().lo < 0) g[j] = restrict(g[j], Interval::unit());
  }
  using detail::guarded;
  const double X1 = q.X1, X2 = q.X2, Y1 = q.Y1, Y2 = q.Y2;
  CurveFamily c;
  c[0] = {[=](double s) { return PointChar{X1 * s, Y1 * g[0](1 - s)}; },
          guarded([=](double Y) { return X1 * (1 - g[0].inverse(Y / Y1)); }),
          guarded([=](double X) { return Y1 * g[0](1 - X / X1); })};
  c[1] = {[=](double s) { return PointChar{-X2 * g[1](1 - s), Y1 * s}; },
          guarded([=](double Y) { return -X2 * g[1](1 - Y / Y1); }),
          guarded([=](double X) { return Y1 * (1 - g[1].inverse(-X / X2)); })};
  c[2] = {[=](double s) { return PointChar{-X2 * s, -Y2 * g[2](1 - s)}; },
          guarded([=](double Y) { return X2 * (g[2].inverse(-Y / Y2) - 1); }),
          guarded([=](double X) { return -Y2 * g[2](1 + X / X2); })};
  c[3] = {[=](double s) { return PointChar{X1 * g[3](1 - s), -Y2 * s}; },
          guarded([=](double Y) { return X1 * g[3](1 + Y / Y2); }),
          guarded([=](double X) { return Y2 * (g[3].inverse(X / X1) - 1); })};
  return c;
}

struct RectangleTrial {
  int start = 0;  // curve index 0..3 carrying the sampled vertex
  std::array<PointChar, 4> vertices{};
  double residual = 0;
};

struct RectangleReport {
  int trials = 0;
  int degenerate = 0;
  double scale = 1;
  double max_residual = 0;
  bool pass = true;
  std::vector<RectangleTrial> records;

  std::string csv() const {
    std::ostringstream os;
    os << "trial,max_residual,pass\n";
    double running = 0;
    for (std::size_t i = 0; i < records.size(); ++i) {
      running = std::max(running, records[i].residual);
      os << i << ',' << format_real(running) << ',' << (running < 1e-6 * scale ? "true" : "false") << '\n';
    }
    return os.str();
  }
};

/// Draws characteristic-parallel rectangles with three vertices on three curves
/// and measures how far the fourth vertex is from the fourth curve.
inline RectangleReport rectangle_rule_test(const CurveFamily& curves, int trials, std::uint64_t seed,
                                           double scale = 1.0) {
  RectangleReport rep;
  rep.scale = scale;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, 3);
  std::uniform_real_distribution<double> param(0.02, 0.98);
  const double min_side = 1e-9 * scale;
  int attempts = 0;
  while (rep.trials < trials && attempts < 100 * trials + 100) {
    ++attempts;
    const int j = pick(rng);
    RectangleTrial tr;
    tr.start = j;
    PointChar v = curves[j].at(param(rng));
    tr.vertices[0] = v;
    bool ok = true;
    // Odd-numbered curves (C1, C3) leave along constant Y, even ones along constant X.
    for (int step = 0; step < 2 && ok; ++step) {
      const int from = (j + step) % 4;
      const Curve& next = curves[(from + 1) % 4];
      if (from % 2 == 0) {
        const auto X = next.x_of_y(v.Y);
        ok = X.has_value();
        if (ok) v = {*X, v.Y};
      } else {
        const auto Y = next.y_of_x(v.X);
        ok = Y.has_value();
        if (ok) v = {v.X, *Y};
      }
      tr.vertices[step + 1] = v;
    }
    if (ok) {
      const PointChar a = tr.vertices[0];
      const PointChar c = tr.vertices[2];
      tr.vertices[3] = j % 2 == 0 ? PointChar{a.X, c.Y} : PointChar{c.X, a.Y};
      ok = std::abs(a.X - c.X) > min_side && std::abs(a.Y - c.Y) > min_side;
    }
    if (!ok) {
      ++rep.degenerate;
      continue;
    }
    const Curve& last = curves[(j + 3) % 4];
    const PointChar d = tr.vertices[3];
    std::optional<double> res;
    if (const auto X = last.x_of_y(d.Y)) res = std::abs(*X - d.X);
    if (const auto Y = last.y_of_x(d.X)) res = std::min(res.value_or(kInf), std::abs(*Y - d.Y));
    if (!res) {
      ++rep.degenerate;
      continue;
    }
    tr.residual = *res;
    rep.max_residual = std::max(rep.max_residual, *res);
    rep.records.push_back(tr);
    ++rep.trials;
  }
  if (rep.trials == 0) throw Error(ErrorKind::degenerate_rectangle, "no nondegenerate rectangle found");
  rep.pass = rep.max_residual < 1e-6 * scale;
  return rep;
}

/// Traces the top side from the bottom, left and right sides of a unit-vertex
/// quadrilateral: from each bottom point one signal runs along constant Y to the
/// right side and returns along constant X, the other runs along constant X to the
/// left side and returns along constant Y; the returning signals meet on the top.
inline std::vector<PointChar> signal_bounce_top(const Quadrilateral& q, int samples = 101) {
  if (!q.unit_vertices()) throw Error(ErrorKind::domain_mismatch, "signal bounce needs unit vertices");
  if (samples < 2) throw Error(ErrorKind::domain, "need at least two samples");
  const MonotoneMap g2 = detail::prepare_side(q.at(2), "g2");
  const MonotoneMap g3 = detail::prepare_side(q.at(3), "g3");
  const MonotoneMap g4 = detail::prepare_side(q.at(4), "g4");
  std::vector<PointChar> top;
  top.reserve(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) {
    const double X0 = -static_cast<double>(i) / (samples - 1);
    const double Y0 = -g3(1 + X0);
    const double right_arg = 1 + Y0;
    const double left_arg = -X0;
    if (!(right_arg >= -1e-12 && right_arg <= 1 + 1e-12) || !(left_arg >= -1e-12 && left_arg <= 1 + 1e-12))
      throw Error(ErrorKind::ray_escapes, "signal from X=" + format_real(X0) + " misses a lateral side");
    const double Xr = g4(std::clamp(right_arg, 0.0, 1.0));
    const double Yl = 1 - g2.inverse(std::clamp(left_arg, 0.0, 1.0));
    top.push_back({Xr, Yl});
  }
  return top;
}

/// Largest |g1(1 - X) - Y| over a traced top side.
inline double top_side_distance(const MonotoneMap& g1, const std::vector<PointChar>& top) {
  double worst = 0;
  for (const PointChar& p : top) worst = std::max(worst, std::abs(g1(1 - p.X) - p.Y));
  return worst;
}

}  // namespace lorentz
