#pragma once

// Lorentz-conformal maps (U,V) = (h(X), k(Y)) or, swapped, (k(Y), h(X)).

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coords.hpp"
#include "monotone.hpp"

namespace lorentz {

class LCMap {
 public:
  LCMap() = default;
  LCMap(MonotoneMap h, MonotoneMap k, bool swapped = false) : h_(std::move(h)), k_(std::move(k)), swapped_(swapped) {}

  const MonotoneMap& h() const { return h_; }
  const MonotoneMap& k() const { return k_; }
  bool swapped() const { return swapped_; }

  /// Both components bijective.
  bool invertible() const { return h_.is_monotone() && k_.is_monotone(); }

  PointChar eval_char(PointChar p) const {
    const double a = h_(p.X);
    const double b = k_(p.Y);
    return swapped_ ? PointChar{b, a} : PointChar{a, b};
  }

  PointXY operator()(PointXY p) const { return from_characteristic(eval_char(to_characteristic(p))); }

  PointChar invert_char(PointChar q) const {
    if (!invertible()) throw Error(ErrorKind::not_invertible, "map has a non-monotone component");
    return swapped_ ? PointChar{h_.inverse(q.Y), k_.inverse(q.X)} : PointChar{h_.inverse(q.X), k_.inverse(q.Y)};
  }

  PointXY invert(PointXY q) const { return from_characteristic(invert_char(to_characteristic(q))); }

 private:
  MonotoneMap h_;
  MonotoneMap k_;
  bool swapped_ = false;
};

/// Composition a after b, defined when both have the same form.
inline LCMap compose(const LCMap& a, const LCMap& b) {
  if (!a.swapped() && !b.swapped()) return LCMap(compose(a.h(), b.h()), compose(a.k(), b.k()));
  if (a.swapped() && !b.swapped()) return LCMap(compose(a.h(), b.h()), compose(a.k(), b.k()), true);
  if (!a.swapped() && b.swapped()) return LCMap(compose(a.k(), b.h()), compose(a.h(), b.k()), true);
  return LCMap(compose(a.k(), b.h()), compose(a.h(), b.k()));
}

using PlaneMap = std::function<PointXY(PointXY)>;

// ---------------------------------------------------------------------------
// Jacobian

enum class JacobianForm { symmetric, antisymmetric };  // [[a,b],[b,a]] or [[-a,-b],[b,a]]

struct JacobianData {
  double ux = 0, uy = 0, vx = 0, vy = 0;
  JacobianForm form = JacobianForm::symmetric;
  double a = 0, b = 0;
  double residual = 0;       // distance from the detected form
  double H2 = 0;             // |ux^2 - vx^2|
  int orientation = 0;       // sign of det
  int signature = 0;         // sign of ux^2 - vx^2
};

inline constexpr double kJacobianTol = 1e-5;

namespace detail {

inline JacobianData jacobian_fd(const PlaneMap& f, PointXY p, double step) {
  const PointXY xp = f({p.x + step, p.y});
  const PointXY xm = f({p.x - step, p.y});
  const PointXY yp = f({p.x, p.y + step});
  const PointXY ym = f({p.x, p.y - step});
  JacobianData j;
  j.ux = (xp.x - xm.x) / (2 * step);
  j.vx = (xp.y - xm.y) / (2 * step);
  j.uy = (yp.x - ym.x) / (2 * step);
  j.vy = (yp.y - ym.y) / (2 * step);
  const double scale = std::max({1.0, std::abs(j.ux), std::abs(j.uy), std::abs(j.vx), std::abs(j.vy)});
  const double res_sym = std::max(std::abs(j.ux - j.vy), std::abs(j.uy - j.vx)) / scale;
  const double res_anti = std::max(std::abs(j.ux + j.vy), std::abs(j.uy + j.vx)) / scale;
  if (res_sym <= res_anti) {
    j.form = JacobianForm::symmetric;
    j.residual = res_sym;
    j.a = j.ux;
    j.b = j.uy;
  } else {
    j.form = JacobianForm::antisymmetric;
    j.residual = res_anti;
    j.a = j.vy;
    j.b = j.vx;
  }
  const double sig = j.ux * j.ux - j.vx * j.vx;
  j.H2 = std::abs(sig);
  j.signature = (sig > 0) - (sig < 0);
  const double det = j.ux * j.vy - j.uy * j.vx;
  j.orientation = (det > 0) - (det < 0);
  return j;
}

inline bool kinked_near(const MonotoneMap& f, double t, double step) {
  for (double b : f.breakpoints()) {
    if (std::abs(b - t) > step) continue;
    const OneSided d = one_sided_derivatives(f, b);
    if (std::abs(d.left - d.right) > kJacobianTol * std::max(1.0, std::abs(d.left))) return true;
  }
  return false;
}

}  // namespace detail

/// Central-difference Jacobian in (x,y) with its Lorentz form classified.
inline JacobianData jacobian(const LCMap& m, PointXY p, double step = 1e-6) {
  const PointChar c = to_characteristic(p);
  if (detail::kinked_near(m.h(), c.X, 2 * step) || detail::kinked_near(m.k(), c.Y, 2 * step))
    throw Error(ErrorKind::degenerate_point, "one-sided derivatives differ at (" + format_real(p.x) + "," +
                                                 format_real(p.y) + ")");
  JacobianData j = detail::jacobian_fd([&](PointXY q) { return m(q); }, p, step);
  if (j.residual > kJacobianTol)
    throw Error(ErrorKind::degenerate_point, "Jacobian has neither Lorentz form at (" + format_real(p.x) + "," +
                                                 format_real(p.y) + ")");
  return j;
}

struct Grid2D {
  Interval xs{-1.0, 1.0};
  Interval ys{-1.0, 1.0};
  int n = 21;

  /// Cell centres, so that grid lines through the origin are avoided.
  std::vector<PointXY> points() const {
    std::vector<PointXY> out;
    out.reserve(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        out.push_back({xs.lo + xs.width() * (i + 0.5) / n, ys.lo + ys.width() * (j + 0.5) / n});
    return out;
  }
};

struct CRReport {
  bool pass = true;
  int points = 0;
  int failures = 0;
  double max_cr_residual = 0;      // best of the two Lorentz-CR systems
  double max_metric_residual = 0;  // du^2 - dv^2 against +-H^2 (dx^2 - dy^2)
  std::optional<PointXY> first_failure;
  int symmetric_points = 0;
  int antisymmetric_points = 0;
};

/// Checks u_x = v_y, u_y = v_x (or u_x = -v_y, u_y = -v_x) and metric scaling on a grid.
inline CRReport verify_lorentz_cr(const PlaneMap& f, const Grid2D& grid, double step = 1e-6) {
  CRReport rep;
  for (const PointXY& p : grid.points()) {
    const JacobianData j = detail::jacobian_fd(f, p, step);
    ++rep.points;
    (j.form == JacobianForm::symmetric ? rep.symmetric_points : rep.antisymmetric_points)++;
    // For J^T diag(1,-1) J = s H^2 diag(1,-1) the entries must be (s H^2, 0, -s H^2).
    const double g11 = j.ux * j.ux - j.vx * j.vx;
    const double g12 = j.ux * j.uy - j.vx * j.vy;
    const double g22 = j.uy * j.uy - j.vy * j.vy;
    const double scale = std::max({1.0, j.ux * j.ux, j.uy * j.uy, j.vx * j.vx, j.vy * j.vy});
    const double metric = std::max(std::abs(g11 + g22), std::abs(g12)) / scale;
    rep.max_cr_residual = std::max(rep.max_cr_residual, j.residual);
    rep.max_metric_residual = std::max(rep.max_metric_residual, metric);
    if (j.residual > kJacobianTol || metric > kJacobianTol) {
      ++rep.failures;
      if (!rep.first_failure) rep.first_failure = p;
    }
  }
  rep.pass = rep.failures == 0;
  return rep;
}

inline CRReport verify_lorentz_cr(const LCMap& m, const Grid2D& grid, double step = 1e-6) {
  return verify_lorentz_cr([&](PointXY p) { return m(p); }, grid, step);
}

// ---------------------------------------------------------------------------
// Contours

enum class Family { u, v };

inline std::string_view family_name(Family f) { return f == Family::u ? "u" : "v"; }

struct ContourCurve {
  Family family = Family::u;
  double level = 0;
  std::vector<PointChar> pts_char;
  std::vector<PointXY> pts_xy;
};

struct ContourResult {
  std::vector<ContourCurve> branches;
  std::vector<double> skipped;  // X samples with no solution
};

struct ContourOptions {
  Interval y_window = Interval::real_line();
  int y_scan = 2001;          // scan resolution for non-monotone k
  double max_gap = 0.0;       // Y refinement threshold; 0 picks 4x the X spacing
};

namespace detail {

// Target value of k(Y) on the contour through X.
inline double contour_target(const LCMap& m, Family fam, double level, double hx) {
  if (fam == Family::v) return 2 * level - hx;
  return m.swapped() ? hx + 2 * level : hx - 2 * level;
}

// Target value of h(X) on the contour through Y.
inline double contour_target_h(const LCMap& m, Family fam, double level, double ky) {
  if (fam == Family::v) return 2 * level - ky;
  return m.swapped() ? ky - 2 * level : ky + 2 * level;
}

inline double bisect_root(const std::function<double(double)>& g, double a, double b) {
  double ga = g(a);
  if (ga == 0) return a;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (a + b);
    if (mid <= std::min(a, b) || mid >= std::max(a, b)) break;
    const double gm = g(mid);
    if (gm == 0) return mid;
    if ((gm < 0) == (ga < 0)) {
      a = mid;
      ga = gm;
    } else {
      b = mid;
    }
  }
  return 0.5 * (a + b);
}

// Monotone pieces of a sampled function: index of the piece for each sample interval.
struct Scan {
  std::vector<double> t, v;
  std::vector<int> piece;
};

inline Scan scan_pieces(const MonotoneMap& f, Interval w, int n) {
  Scan s;
  s.t.resize(static_cast<std::size_t>(n));
  s.v.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    s.t[i] = i + 1 == n ? w.hi : w.lo + w.width() * i / (n - 1);
    s.v[i] = f(s.t[i]);
  }
  int piece = 0;
  int prev_dir = 0;
  for (int i = 0; i + 1 < n; ++i) {
    const double d = s.v[i + 1] - s.v[i];
    const int dir = (d > 0) - (d < 0);
    if (dir != 0 && prev_dir != 0 && dir != prev_dir) ++piece;
    if (dir != 0) prev_dir = dir;
    s.piece.push_back(piece);
  }
  return s;
}

}  // namespace detail

/// Samples the contour u = level (h(X) - k(Y) = 2u) or v = level (h(X) + k(Y) = 2v).
/// A monotone k gives one Y per X; a folded k gives one branch per monotone piece.
inline ContourResult contour(const LCMap& m, Family fam, double level, const std::vector<double>& xs,
                             const ContourOptions& opt = {}) {
  ContourResult res;
  const MonotoneMap& h = m.h();
  const MonotoneMap& k = m.k();
  const Interval kd = k.domain();
  Interval yw{std::max(opt.y_window.lo, kd.lo), std::min(opt.y_window.hi, kd.hi)};

  auto make_curve = [&] {
    ContourCurve c;
    c.family = fam;
    c.level = level;
    return c;
  };

  if (k.is_monotone()) {
    ContourCurve cur = make_curve();
    for (double X : xs) {
      std::optional<double> Y;
      try {
        Y = k.inverse(detail::contour_target(m, fam, level, h(X)));
        if (!yw.contains(*Y)) Y.reset();
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::range && e.kind() != ErrorKind::domain) throw;
      }
      if (!Y) {
        res.skipped.push_back(X);
        if (!cur.pts_char.empty()) res.branches.push_back(std::exchange(cur, make_curve()));
        continue;
      }
      cur.pts_char.push_back({X, *Y});
    }
    if (!cur.pts_char.empty()) res.branches.push_back(std::move(cur));
  } else {
    if (!yw.is_finite()) {
      double reach = 10.0;
      for (double X : xs) reach = std::max(reach, 2 * std::abs(X));
      yw = {std::max(yw.lo, -reach), std::min(yw.hi, reach)};
    }
    const detail::Scan scan = detail::scan_pieces(k, yw, opt.y_scan);
    const int pieces = scan.piece.empty() ? 0 : scan.piece.back() + 1;
    std::vector<ContourCurve> open(static_cast<std::size_t>(pieces), make_curve());
    for (double X : xs) {
      const double target = detail::contour_target(m, fam, level, h(X));
      std::vector<bool> hit(static_cast<std::size_t>(pieces), false);
      for (std::size_t i = 0; i + 1 < scan.t.size(); ++i) {
        const double a = scan.v[i] - target;
        const double b = scan.v[i + 1] - target;
        if (a == 0 && i > 0) continue;  // counted by the previous interval
        if (!(a == 0 || b == 0 || (a < 0) != (b < 0))) continue;
        const int pc = scan.piece[i];
        if (hit[pc]) continue;
        const double Y = b == 0 ? scan.t[i + 1]
                                : detail::bisect_root([&](double t) { return k(t) - target; }, scan.t[i], scan.t[i + 1]);
        open[pc].pts_char.push_back({X, Y});
        hit[pc] = true;
      }
      bool any = false;
      for (int pc = 0; pc < pieces; ++pc) {
        any = any || hit[pc];
        if (!hit[pc] && !open[pc].pts_char.empty()) res.branches.push_back(std::exchange(open[pc], make_curve()));
      }
      if (!any) res.skipped.push_back(X);
    }
    for (auto& c : open)
      if (!c.pts_char.empty()) res.branches.push_back(std::move(c));
  }

  // Steep stretches: fill Y gaps by solving for X between consecutive samples.
  double gap = opt.max_gap;
  if (gap <= 0 && xs.size() > 1) gap = 4 * std::abs(xs.back() - xs.front()) / static_cast<double>(xs.size() - 1);
  for (auto& br : res.branches) {
    if (gap <= 0) break;
    std::vector<PointChar> filled;
    for (std::size_t i = 0; i < br.pts_char.size(); ++i) {
      filled.push_back(br.pts_char[i]);
      if (i + 1 == br.pts_char.size()) break;
      const PointChar a = br.pts_char[i];
      const PointChar b = br.pts_char[i + 1];
      const int extra = static_cast<int>(std::floor(std::abs(b.Y - a.Y) / gap));
      for (int e = 1; e <= std::min(extra, 1000); ++e) {
        const double Y = a.Y + (b.Y - a.Y) * e / (extra + 1);
        const double target = detail::contour_target_h(m, fam, level, k(Y));
        auto g = [&](double X) { return h(X) - target; };
        const double ga = g(a.X);
        const double gb = g(b.X);
        if (!(ga == 0 || gb == 0 || (ga < 0) != (gb < 0))) continue;
        filled.push_back({detail::bisect_root(g, a.X, b.X), Y});
      }
    }
    br.pts_char = std::move(filled);
  }

  for (auto& br : res.branches)
    for (const PointChar& c : br.pts_char) br.pts_xy.push_back(from_characteristic(c));
  return res;
}

/// The single contour point over X; RangeError when the level misses it.
inline PointChar contour_point(const LCMap& m, Family fam, double level, double X) {
  return {X, m.k().inverse(detail::contour_target(m, fam, level, m.h()(X)))};
}

/// h(X) -+ k(Y) - 2 level at a point, with the sign of the family.
inline double contour_residual(const LCMap& m, Family fam, double level, PointChar p) {
  const PointChar q = m.eval_char(p);
  const double val = fam == Family::u ? q.X - q.Y : q.X + q.Y;
  return val - 2 * level;
}

// ---------------------------------------------------------------------------
// Rule 1 admissibility

struct AdmissibilityReport {
  bool pass = true;
  double max_abs_slope = 0;
  std::string reason;
};

/// Secant test for a curve given as samples of a graph y = f(x) (or x = f(y)).
inline AdmissibilityReport admissible_contour(const std::vector<double>& ts, const std::vector<double>& fs) {
  AdmissibilityReport rep;
  int run = 0;
  for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
    const double s = (fs[i + 1] - fs[i]) / (ts[i + 1] - ts[i]);
    rep.max_abs_slope = std::max(rep.max_abs_slope, std::abs(s));
    if (std::abs(s) > 1 + 1e-12) {
      rep.pass = false;
      if (rep.reason.empty()) rep.reason = "secant slope " + format_real(s) + " at " + format_real(ts[i]);
    }
    run = std::abs(std::abs(s) - 1) <= 1e-12 ? run + 1 : 0;
    if (run >= 2) {
      rep.pass = false;
      if (rep.reason.empty()) rep.reason = "slope equals 1 on an interval at " + format_real(ts[i]);
    }
  }
  return rep;
}

inline AdmissibilityReport admissible_contour(const std::function<double(double)>& f, const std::vector<double>& ts) {
  std::vector<double> fs;
  fs.reserve(ts.size());
  for (double t : ts) fs.push_back(f(t));
  return admissible_contour(ts, fs);
}

// ---------------------------------------------------------------------------
// Rule 2 crossing slopes

struct CrossingReport {
  double m_minus = 0, m_plus = 0, n_minus = 0, n_plus = 0;
  double m_product = 0, n_product = 0;
  bool pass = false;
};

/// One-sided slopes at X0 of the u-contour Y = fu(X) and the v-contour Y = fv(X).
/// m are the u slopes, n the negated v slopes.
inline CrossingReport crossing_tangent_check(const std::function<double(double)>& fu,
                                             const std::function<double(double)>& fv, PointChar crossing,
                                             double step = 1e-4) {
  const double X0 = crossing.X;
  const double Y0 = crossing.Y;
  auto right = [&](const std::function<double(double)>& f, double d) { return (f(X0 + d) - Y0) / d; };
  auto left = [&](const std::function<double(double)>& f, double d) { return (Y0 - f(X0 - d)) / d; };
  auto extrapolate = [&](auto side, const std::function<double(double)>& f) {
    const double coarse = 2 * side(f, step / 2) - side(f, step);
    const double fine = 2 * side(f, step / 4) - side(f, step / 2);
    if (!std::isfinite(fine) || std::abs(fine - coarse) > 1e-6 * std::max(1.0, std::abs(fine)))
      throw Error(ErrorKind::nondifferentiable_crossing,
                  "one-sided slope does not converge at X=" + format_real(X0));
    return fine;
  };
  CrossingReport r;
  r.m_plus = extrapolate(right, fu);
  r.m_minus = extrapolate(left, fu);
  r.n_plus = -extrapolate(right, fv);
  r.n_minus = -extrapolate(left, fv);
  r.m_product = r.m_minus * r.m_plus;
  r.n_product = r.n_minus * r.n_plus;
  r.pass = std::abs(r.m_product - r.n_product) <= 1e-6 * std::max(1.0, std::abs(r.m_product));
  return r;
}

inline CrossingReport crossing_tangent_check(const LCMap& m, PointChar crossing, double step = 1e-4) {
  const PointChar q = m.eval_char(crossing);
  const double u0 = 0.5 * (q.X - q.Y);
  const double v0 = 0.5 * (q.X + q.Y);
  auto fu = [&](double X) { return contour_point(m, Family::u, u0, X).Y; };
  auto fv = [&](double X) { return contour_point(m, Family::v, v0, X).Y; };
  return crossing_tangent_check(fu, fv, crossing, step);
}

// ---------------------------------------------------------------------------
// Rule 6 tangency

struct TangencyReport {
  std::vector<PointChar> points;  // characteristic coordinates where contours are tangent
  int checked = 0;
};

namespace detail {

inline std::vector<double> derivative_candidates(const MonotoneMap& f, double t) {
  for (double b : f.breakpoints()) {
    if (std::abs(b - t) <= 1e-12 * std::max(1.0, std::abs(t))) {
      const OneSided d = one_sided_derivatives(f, t);
      return {d.left, d.right};
    }
  }
  return {derivative(f, t)};
}

}  // namespace detail

/// Grid points (characteristic window, endpoints included) where h'(X)/k'(Y)
/// is zero or infinite to within the threshold.
inline TangencyReport tangency_locus(const LCMap& m, Interval Xs, Interval Ys, int resolution,
                                     double threshold = 1e-6) {
  if (resolution < 2) throw Error(ErrorKind::empty_window, "resolution must be at least 2");
  TangencyReport rep;
  std::vector<std::vector<double>> hd, kd;
  std::vector<double> xv, yv;
  for (int i = 0; i < resolution; ++i) {
    xv.push_back(Xs.lo + Xs.width() * i / (resolution - 1));
    yv.push_back(Ys.lo + Ys.width() * i / (resolution - 1));
    hd.push_back(detail::derivative_candidates(m.h(), xv.back()));
    kd.push_back(detail::derivative_candidates(m.k(), yv.back()));
  }
  for (int i = 0; i < resolution; ++i) {
    for (int j = 0; j < resolution; ++j) {
      ++rep.checked;
      bool flagged = false;
      for (double a : hd[i]) {
        for (double b : kd[j]) {
          const double r = std::abs(a / b);
          if (!std::isfinite(r) || r < threshold || r > 1.0 / threshold) flagged = true;
        }
      }
      if (flagged) rep.points.push_back({xv[i], yv[j]});
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Klein-Gordon flattening

/// The map with h' = nu and k' = mu, anchored at h(0) = k(0) = 0.
inline LCMap klein_gordon_flatten(const MonotoneMap& nu, const MonotoneMap& mu, Interval domain) {
  if (!domain.is_finite() || !(domain.lo < domain.hi))
    throw Error(ErrorKind::empty_window, "flattening needs a finite nondegenerate domain");
  if (!domain.contains(0.0)) throw Error(ErrorKind::domain, "flattening domain must contain the anchor 0");
  for (const MonotoneMap* f : {&nu, &mu}) {
    for (int i = 0; i <= 1000; ++i) {
      const double t = domain.lo + domain.width() * i / 1000;
      const double v = (*f)(t);
      if (!(v > 0))
        throw Error(ErrorKind::non_positive_density,
                    f->spec() + " is not positive at " + format_real(t));
    }
  }
  return LCMap(antiderivative(nu, domain), antiderivative(mu, domain));
}

}  // namespace lorentz
