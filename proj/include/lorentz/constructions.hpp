#pragma once

// Realizing prescribed contours: crossing rays, quadrilaterals mapped to the
// unit square, and the unfolding and cropping operations on single maps.

#include <array>
#include <cmath>
#include <optional>
#include <string>

#include "lcmap.hpp"

namespace lorentz {

/// Four rays from the origin in characteristic coordinates:
///   C1: Y = g1(X),  C2: -X = g2(Y),  C3: -Y = g3(-X),  C4: X = g4(-Y).
struct RayFamily {
  std::array<std::optional<MonotoneMap>, 4> g;

  const MonotoneMap& at(int j) const {
    if (!g[j - 1]) throw Error(ErrorKind::domain, "ray g" + std::to_string(j) + " is missing");
    return *g[j - 1];
  }
  int missing() const {
    int idx = 0;
    for (int j = 1; j <= 4; ++j) {
      if (g[j - 1]) continue;
      if (idx) throw Error(ErrorKind::domain, "more than one ray missing");
      idx = j;
    }
    return idx;
  }
};

/// Four sides with vertices on the characteristic axes at (X1,0), (0,Y1), (-X2,0), (0,-Y2).
/// With unit vertices the sides are
///   C1: Y = g1(1-X),  C2: -X = g2(1-Y),  C3: -Y = g3(1+X),  C4: X = g4(1+Y);
/// otherwise each side is the unit-vertex side scaled along the characteristic axes.
struct Quadrilateral {
  std::array<std::optional<MonotoneMap>, 4> g;
  double X1 = 1, X2 = 1, Y1 = 1, Y2 = 1;

  const MonotoneMap& at(int j) const {
    if (!g[j - 1]) throw Error(ErrorKind::domain, "side g" + std::to_string(j) + " is missing");
    return *g[j - 1];
  }
  int missing() const {
    int idx = 0;
    for (int j = 1; j <= 4; ++j) {
      if (g[j - 1]) continue;
      if (idx) throw Error(ErrorKind::domain, "more than one side missing");
      idx = j;
    }
    return idx;
  }
  bool unit_vertices() const { return X1 == 1 && X2 == 1 && Y1 == 1 && Y2 == 1; }
};

inline constexpr double kCyclicTol = 1e-6;

namespace detail {

/// Validates a ray map: increasing bijection of [0,inf) fixing 0, returned with g(0) = 0 exact.
inline MonotoneMap prepare_ray(const MonotoneMap& g, const std::string& label) {
  if (g.is_identity()) return g;
  const Interval d = g.domain();
  if (d.lo > 0 || d.hi < kInf) throw Error(ErrorKind::domain_mismatch, label + " must be defined on [0,inf)");
  MonotoneMap r = d.lo < 0 ? restrict(g, Interval::half_line()) : g;
  if (!r.is_increasing()) throw Error(ErrorKind::not_monotone, label + " is not increasing on [0,inf)");
  if (std::abs(r(0.0)) > 1e-12) throw Error(ErrorKind::not_fixing_origin, label + " does not fix 0");
  if (r.range().hi != kInf) throw Error(ErrorKind::domain_mismatch, label + " is not onto [0,inf)");
  return r(0.0) == 0.0 && r.domain().lo == 0.0 ? r : pin_half_line(r);
}

/// Validates a side map: increasing bijection of [0,1] fixing both endpoints, pinned exactly.
inline MonotoneMap prepare_side(const MonotoneMap& g, const std::string& label) {
  if (g.is_identity()) return g;
  if (!g.domain().contains(Interval::unit()))
    throw Error(ErrorKind::domain_mismatch, label + " must be defined on [0,1]");
  MonotoneMap r = restrict(g, Interval::unit());
  if (!r.is_increasing()) throw Error(ErrorKind::not_monotone, label + " is not increasing on [0,1]");
  if (std::abs(r(0.0)) > 1e-12 || std::abs(r(1.0) - 1.0) > 1e-12)
    throw Error(ErrorKind::not_fixing_endpoints, label + " does not fix 0 and 1");
  return pin_unit(r);
}

inline MonotoneMap compose3(const MonotoneMap& a, const MonotoneMap& b, const MonotoneMap& c) {
  return compose(a, compose(b, c));
}

/// Gluing of half-line parts into a map on [-1,1], extended by the identity.
inline MonotoneMap square_assemble(const MonotoneMap& plus, const MonotoneMap& minus) {
  const MonotoneMap inner = piecewise(1.0, plus, identity_map());
  const MonotoneMap neg_side = restrict(negate(compose(minus, affine(-1.0, 0.0))), {-1.0, 0.0}, -1.0, 0.0);
  return piecewise(-1.0, identity_map(), piecewise(0.0, neg_side, inner));
}

inline void check_increasing(const MonotoneMap& f, const std::string& label) {
  if (!f.is_increasing()) throw Error(ErrorKind::not_monotone, label + " is not increasing");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Crossing rays

/// max |g4 g3 g2 g1 (t) - t| / max(1,t) over t in [0, reach].
inline double cyclic_residual(const RayFamily& rays, double reach = 10.0, int samples = 201) {
  double worst = 0;
  for (int i = 0; i < samples; ++i) {
    const double t = reach * i / (samples - 1);
    const double v = rays.at(4)(rays.at(3)(rays.at(2)(rays.at(1)(t))));
    worst = std::max(worst, std::abs(v - t) / std::max(1.0, t));
  }
  return worst;
}

/// The missing ray from the cyclic condition g4 g3 g2 g1 = id.
inline MonotoneMap fourth_ray(const RayFamily& rays) {
  const int miss = rays.missing();
  if (!miss) throw Error(ErrorKind::domain, "no ray is missing");
  std::array<MonotoneMap, 4> g;
  for (int j = 1; j <= 4; ++j)
    if (j != miss) g[j - 1] = detail::prepare_ray(rays.at(j), "g" + std::to_string(j));
  switch (miss) {
    case 4: return invert(detail::compose3(g[2], g[1], g[0]));
    case 1: return invert(detail::compose3(g[3], g[2], g[1]));
    case 2: return invert(detail::compose3(g[0], g[3], g[2]));
    default: return invert(detail::compose3(g[1], g[0], g[3]));
  }
}

inline RayFamily complete(const RayFamily& rays) {
  RayFamily out = rays;
  if (const int miss = rays.missing()) out.g[miss - 1] = fourth_ray(rays);
  return out;
}

/// The map (h,k) with k- = p, h- = p g3, k+ = p g3 g2, h+ = p g3 g2 g1.
inline LCMap realize_crossing(const RayFamily& input, const MonotoneMap& p_in) {
  const RayFamily rays = complete(input);
  std::array<MonotoneMap, 4> g;
  for (int j = 1; j <= 4; ++j) g[j - 1] = detail::prepare_ray(rays.at(j), "g" + std::to_string(j));
  const MonotoneMap p = detail::prepare_ray(p_in, "p");
  RayFamily checked;
  for (int j = 0; j < 4; ++j) checked.g[j] = g[j];
  const double res = cyclic_residual(checked);
  if (res > kCyclicTol)
    throw Error(ErrorKind::cyclic_violation, "cyclic residual " + format_real(res) + " exceeds tolerance");
  const MonotoneMap k_minus = p;
  const MonotoneMap h_minus = compose(p, g[2]);
  const MonotoneMap k_plus = compose(h_minus, g[1]);
  const MonotoneMap h_plus = compose(k_plus, g[0]);
  return LCMap(assemble_parts(h_plus, h_minus), assemble_parts(k_plus, k_minus));
}

/// Recovers the rays of the u = 0 and v = 0 contours of an invertible map through the origin.
inline RayFamily rays_of(const LCMap& m) {
  const MonotoneMap hp = positive_part(m.h());
  const MonotoneMap hm = negative_part(m.h());
  const MonotoneMap kp = positive_part(m.k());
  const MonotoneMap km = negative_part(m.k());
  RayFamily r;
  r.g[0] = compose(invert(kp), hp);
  r.g[1] = compose(invert(hm), kp);
  r.g[2] = compose(invert(km), hm);
  r.g[3] = compose(invert(hp), km);
  return r;
}

// ---------------------------------------------------------------------------
// Gauge freedom

struct GaugeMap {
  MonotoneMap ell;
  double U0 = 0;
  double V0 = 0;
};

namespace detail {

inline double oddness_residual(const MonotoneMap& f, double reach) {
  double worst = 0;
  const Interval d = f.domain();
  const double r = std::min({reach, d.hi, -d.lo});
  for (int i = 0; i <= 200; ++i) {
    const double t = r * i / 200;
    worst = std::max(worst, std::abs(f(t) + f(-t)) / std::max(1.0, std::abs(f(t))));
  }
  return worst;
}

inline MonotoneMap shift_conjugate(const MonotoneMap& ell, double shift) {
  if (shift == 0) return ell;
  return compose(affine(1.0, shift), compose(ell, affine(1.0, -shift)));
}

}  // namespace detail

/// lambda o alpha with lambda = (ell, ell), conjugated by the shift (U0,V0) when given.
inline LCMap gauge_equivalent_crossing(const LCMap& m, const GaugeMap& gauge) {
  detail::check_increasing(gauge.ell, "gauge");
  if (detail::oddness_residual(gauge.ell, 10.0) > 1e-10) throw Error(ErrorKind::not_odd, "gauge map is not odd");
  return LCMap(compose(detail::shift_conjugate(gauge.ell, gauge.U0), m.h()),
               compose(detail::shift_conjugate(gauge.ell, gauge.V0), m.k()), m.swapped());
}

/// ell = h2 h1^{-1}, checked for oddness and against k2 = ell k1 (tolerance 1e-9).
inline GaugeMap recover_gauge(const LCMap& m1, const LCMap& m2, double U0 = 0, double V0 = 0,
                              double reach = 5.0) {
  // ell(s) = h2(h1^{-1}(s + U0)) - U0
  GaugeMap out{compose(affine(1.0, -U0), compose(m2.h(), compose(invert(m1.h()), affine(1.0, U0)))), U0, V0};
  const double odd = detail::oddness_residual(out.ell, reach);
  if (odd > 1e-9) throw Error(ErrorKind::not_odd, "recovered gauge is not odd (residual " + format_real(odd) + ")");
  const Interval kd = m1.k().domain();
  const double r = std::min({reach, kd.hi, -kd.lo});
  for (int i = 0; i <= 200; ++i) {
    const double Y = -r + 2 * r * i / 200;
    const double want = m2.k()(Y);
    const double got = out.ell(m1.k()(Y) - V0) + V0;
    if (std::abs(want - got) > 1e-9 * std::max(1.0, std::abs(want)))
      throw Error(ErrorKind::inconsistent_gauge, "k2 differs from ell o k1 at Y=" + format_real(Y));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Quadrilaterals

/// Axis scaling sending the vertices to (+-1,0), (0,+-1), with the rescaled quadrilateral.
inline std::pair<Quadrilateral, LCMap> quad_normalize(const Quadrilateral& q) {
  for (double v : {q.X1, q.X2, q.Y1, q.Y2})
    if (!(v > 0) || !std::isfinite(v))
      throw Error(ErrorKind::vertices_not_on_axes, "vertex offsets must be positive and finite");
  auto axis = [](double pos, double neg) {
    if (pos == 1 && neg == 1) return identity_map();
    return piecewise(0.0, affine(1.0 / neg, 0.0), affine(1.0 / pos, 0.0));
  };
  Quadrilateral n = q;
  n.X1 = n.X2 = n.Y1 = n.Y2 = 1;
  return {n, LCMap(axis(q.X1, q.X2), axis(q.Y1, q.Y2))};
}

/// Vertex offsets read from four points that must lie on the characteristic axes,
/// ordered right (X1,0), top (0,Y1), left (-X2,0), bottom (0,-Y2).
inline Quadrilateral with_vertices(Quadrilateral q, const std::array<PointChar, 4>& v) {
  auto on_axis = [](double zero) { return std::abs(zero) <= 1e-12; };
  if (!on_axis(v[0].Y) || !on_axis(v[1].X) || !on_axis(v[2].Y) || !on_axis(v[3].X) || !(v[0].X > 0) ||
      !(v[1].Y > 0) || !(v[2].X < 0) || !(v[3].Y < 0))
    throw Error(ErrorKind::vertices_not_on_axes, "vertices must sit on the four characteristic half-axes");
  q.X1 = v[0].X;
  q.Y1 = v[1].Y;
  q.X2 = -v[2].X;
  q.Y2 = -v[3].Y;
  return q;
}

/// max |g4 g3~ g2 g1~ (s) - s| over s in [0,1].
inline double twisted_cyclic_residual(const Quadrilateral& q, int samples = 201) {
  const MonotoneMap t1 = tilde(q.at(1));
  const MonotoneMap t3 = tilde(q.at(3));
  double worst = 0;
  for (int i = 0; i < samples; ++i) {
    const double s = static_cast<double>(i) / (samples - 1);
    worst = std::max(worst, std::abs(q.at(4)(t3(q.at(2)(t1(s)))) - s));
  }
  return worst;
}

/// The missing side from the twisted cycle g4 g3~ g2 g1~ = id.
inline MonotoneMap fourth_side_square(const Quadrilateral& q) {
  const int miss = q.missing();
  if (!miss) throw Error(ErrorKind::domain, "no side is missing");
  std::array<MonotoneMap, 4> g;
  for (int j = 1; j <= 4; ++j)
    if (j != miss) g[j - 1] = detail::prepare_side(q.at(j), "g" + std::to_string(j));
  switch (miss) {
    case 4: return invert(detail::compose3(tilde(g[2]), g[1], tilde(g[0])));
    case 1: return invert(detail::compose3(tilde(g[3]), g[2], tilde(g[1])));
    case 2: return invert(detail::compose3(tilde(g[0]), g[3], tilde(g[2])));
    default: return invert(detail::compose3(tilde(g[1]), g[0], tilde(g[3])));
  }
}

inline Quadrilateral complete(const Quadrilateral& q) {
  Quadrilateral out = q;
  if (const int miss = q.missing()) out.g[miss - 1] = fourth_side_square(q);
  return out;
}

/// The map with k- = p~, h- = p g3~, k+ = p~ g3 g2~, h+ = p g3~ g2 g1~ on [-1,1],
/// extended by the identity, preceded by the vertex normalization when needed.
inline LCMap realize_square(const Quadrilateral& input, const MonotoneMap& p_in) {
  const Quadrilateral full = complete(input);
  std::array<MonotoneMap, 4> g;
  Quadrilateral checked = full;
  for (int j = 1; j <= 4; ++j) {
    g[j - 1] = detail::prepare_side(full.at(j), "g" + std::to_string(j));
    checked.g[j - 1] = g[j - 1];
  }
  const MonotoneMap p = detail::prepare_side(p_in, "p");
  const double res = twisted_cyclic_residual(checked);
  if (res > kCyclicTol)
    throw Error(ErrorKind::cyclic_violation, "twisted cyclic residual " + format_real(res) + " exceeds tolerance");
  const MonotoneMap pt = tilde(p);
  const MonotoneMap k_minus = pt;
  const MonotoneMap h_minus = compose(p, tilde(g[2]));
  const MonotoneMap k_plus = detail::compose3(pt, g[2], tilde(g[1]));
  const MonotoneMap h_plus = compose(h_minus, compose(g[1], tilde(g[0])));
  LCMap m(detail::square_assemble(h_plus, h_minus), detail::square_assemble(k_plus, k_minus));
  if (full.unit_vertices()) return m;
  return compose(m, quad_normalize(full).second);
}

/// Quadrilateral (id, g, id, g^{-1}) and its map (k-,h-,k+,h+) = (p~, p, p~ g~, p g).
inline std::pair<Quadrilateral, LCMap> flat_top_bottom(const MonotoneMap& g_in, const MonotoneMap& p_in) {
  const MonotoneMap g = detail::prepare_side(g_in, "g");
  const MonotoneMap p = detail::prepare_side(p_in, "p");
  Quadrilateral q;
  q.g = {identity_map(), g, identity_map(), invert(g)};
  const MonotoneMap pt = tilde(p);
  LCMap m(detail::square_assemble(compose(p, g), p), detail::square_assemble(compose(pt, tilde(g)), pt));
  return {q, m};
}

/// Quadrilateral (g~^{-1} g, g, id, g~^{-1}) and its map (k-,h-,k+,h+) = (p~, p, p~ g~, p g~).
inline std::pair<Quadrilateral, LCMap> left_right_symmetric(const MonotoneMap& g_in, const MonotoneMap& p_in) {
  const MonotoneMap g = detail::prepare_side(g_in, "g");
  const MonotoneMap p = detail::prepare_side(p_in, "p");
  const MonotoneMap gt = tilde(g);
  Quadrilateral q;
  q.g = {compose(invert(gt), g), g, identity_map(), invert(gt)};
  const MonotoneMap pt = tilde(p);
  LCMap m(detail::square_assemble(compose(p, gt), p), detail::square_assemble(compose(pt, gt), pt));
  return {q, m};
}

/// Square-case gauge: h2 = ell h1 and k2 = ell~ k1 on [-1,1], with ell given on [0,1]
/// and extended oddly.
inline LCMap square_gauge(const LCMap& m, const MonotoneMap& ell_in) {
  const MonotoneMap ell = detail::prepare_side(ell_in, "ell");
  const MonotoneMap lh = detail::square_assemble(ell, ell);
  const MonotoneMap lk = detail::square_assemble(tilde(ell), tilde(ell));
  return LCMap(compose(lh, m.h()), compose(lk, m.k()), m.swapped());
}

// ---------------------------------------------------------------------------
// Unfolding and cropping

/// h = k = odd extension of p restricted to [0,inf); the negated variant uses -h.
inline LCMap unfold(const MonotoneMap& p, bool negated = false) {
  const Interval d = p.domain();
  if (d.lo > -1 || d.hi < 1) throw Error(ErrorKind::domain_mismatch, "unfold needs p defined around 0");
  const double reach = std::min({10.0, d.hi, -d.lo});
  for (int i = 1; i <= 200; ++i) {
    const double t = reach * i / 200;
    const double a = p(t);
    if (std::abs(a - p(-t)) > 1e-10 * std::max(1.0, std::abs(a)))
      throw Error(ErrorKind::not_even, p.spec() + " is not even at t=" + format_real(t));
  }
  const MonotoneMap plus = positive_part(p);
  if (!plus.is_increasing() || std::abs(plus(0.0)) > 1e-12 || plus.range().hi != kInf)
    throw Error(ErrorKind::not_bijective_on_half_line, p.spec() + " is not an increasing bijection of [0,inf)");
  MonotoneMap h = odd_extend(plus);
  if (negated) h = negate(h);
  return LCMap(h, h);
}

/// H_c(t) = h(t+c) - h(c) for t >= 0 and h(t-c) - h(-c) for t <= 0.
inline MonotoneMap crop_map(const MonotoneMap& h, double c) {
  if (!(c >= 0) || !std::isfinite(c)) throw Error(ErrorKind::domain, "crop width must be a finite c >= 0");
  if (h.domain().lo != -kInf || h.domain().hi != kInf)
    throw Error(ErrorKind::domain_mismatch, "crop needs h defined on the whole line");
  if (detail::oddness_residual(h, 10.0) > 1e-12) throw Error(ErrorKind::not_odd, h.spec() + " is not odd");
  if (!h.is_increasing()) throw Error(ErrorKind::non_positive_derivative, h.spec() + " is not increasing");
  for (int i = 1; i <= 400; ++i) {
    const double t = 10.0 * i / 400;
    if (!(derivative(h, t) > 0))
      throw Error(ErrorKind::non_positive_derivative, "h' vanishes at t=" + format_real(t));
  }
  if (c == 0) return h;
  const double hc = h(c);
  const MonotoneMap right = restrict(compose(affine(1.0, -hc), compose(h, affine(1.0, c))), {0.0, kInf}, 0.0);
  const MonotoneMap left = restrict(compose(affine(1.0, hc), compose(h, affine(1.0, -c))), {-kInf, 0.0},
                                    std::nullopt, 0.0);
  return piecewise(0.0, left, right);
}

inline LCMap crop(const MonotoneMap& h, double c) {
  const MonotoneMap H = crop_map(h, c);
  return LCMap(H, H);
}

}  // namespace lorentz
