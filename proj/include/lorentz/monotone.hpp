#pragma once

// Strictly monotone real maps represented as immutable expression trees.
//
// A MonotoneMap is a handle to a shared, const node. Leaves are closed-form
// builtins (affine, odd powers, e^t-1, the ridge profile, piecewise-linear
// tables); interior nodes compose, invert, glue, reflect and restrict. Every
// node knows its domain and, when monotone, its direction and range, so that
// inversion can be done structurally instead of by sampling.
//
// A handful of non-monotone leaves (t^2, |t|, sin, cos, polynomials, even
// extensions) exist so that folded maps can be evaluated and classified. They
// report Direction::none and refuse inversion.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <memory>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace lorentz {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct Interval {
  double lo = -kInf;
  double hi = kInf;

  static constexpr Interval real_line() { return {-kInf, kInf}; }
  static constexpr Interval half_line() { return {0.0, kInf}; }
  static constexpr Interval unit() { return {0.0, 1.0}; }

  bool is_finite() const { return std::isfinite(lo) && std::isfinite(hi); }
  bool contains(double t) const { return t >= lo && t <= hi; }
  bool contains(const Interval& o) const { return o.lo >= lo && o.hi <= hi; }
  double width() const { return hi - lo; }
};

enum class Direction { increasing, decreasing, none };

inline Direction flip(Direction d) {
  switch (d) {
    case Direction::increasing: return Direction::decreasing;
    case Direction::decreasing: return Direction::increasing;
    case Direction::none: return Direction::none;
  }
  return Direction::none;
}

/// Shortest decimal form that parses back to the same double.
inline std::string format_real(double v) {
  if (v == 0.0) return "0";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

namespace detail {

/// Absolute slack granted when an argument lands just outside a domain bound.
inline double slack(double bound) { return 1e-12 * std::max(1.0, std::abs(bound)); }

class Node {
 public:
  virtual ~Node() = default;

  Interval domain;
  Interval range{std::nan(""), std::nan("")};
  Direction dir = Direction::none;

  // t is inside domain; it may be +-inf at an infinite endpoint, in which
  // case the limit is returned.
  virtual double eval(double t) const = 0;
  virtual std::optional<double> closed_inverse(double) const { return std::nullopt; }
  virtual void print(std::ostream& os) const = 0;
  virtual void breakpoints(std::vector<double>&) const {}
};

using NodePtr = std::shared_ptr<const Node>;

inline double clamp_to(const Interval& d, double t, const char* what = "argument") {
  if (std::isnan(t)) throw Error(ErrorKind::domain, std::string(what) + " is NaN");
  if (t < d.lo) {
    if (d.lo - t <= slack(d.lo)) return d.lo;
    throw Error(ErrorKind::domain, std::string(what) + " " + format_real(t) + " below domain [" +
                                       format_real(d.lo) + "," + format_real(d.hi) + "]");
  }
  if (t > d.hi) {
    if (t - d.hi <= slack(d.hi)) return d.hi;
    throw Error(ErrorKind::domain, std::string(what) + " " + format_real(t) + " above domain [" +
                                       format_real(d.lo) + "," + format_real(d.hi) + "]");
  }
  return t;
}

inline double eval_checked(const Node& n, double t) { return n.eval(clamp_to(n.domain, t)); }

inline constexpr int kMaxBisection = 200;
inline constexpr double kBracketLimit = 1e150;

inline double bisect_inverse(const Node& n, double y) {
  const bool inc = n.dir == Direction::increasing;
  // g is increasing in t and vanishes at the preimage.
  auto g = [&](double t) { return inc ? n.eval(t) - y : y - n.eval(t); };
  const double tol = 1e-12 * std::max(1.0, std::abs(y));

  double lo = n.domain.lo;
  double hi = n.domain.hi;
  if (!std::isfinite(lo) || !std::isfinite(hi)) {
    double c = std::clamp(0.0, lo, hi);
    const double gc = g(c);
    if (gc == 0.0) return c;
    double step = 1.0;
    if (gc < 0.0) {
      double a = c;
      double b = std::min(c + step, hi);
      while (g(b) < 0.0) {
        if (b >= hi) throw Error(ErrorKind::range, "value " + format_real(y) + " beyond range");
        a = b;
        step *= 2.0;
        b = std::min(c + step, hi);
        if (std::abs(b) > kBracketLimit)
          throw Error(ErrorKind::convergence, "no bracket for inverse of " + format_real(y));
      }
      lo = a;
      hi = b;
    } else {
      double b = c;
      double a = std::max(c - step, lo);
      while (g(a) > 0.0) {
        if (a <= lo) throw Error(ErrorKind::range, "value " + format_real(y) + " beyond range");
        b = a;
        step *= 2.0;
        a = std::max(c - step, lo);
        if (std::abs(a) > kBracketLimit)
          throw Error(ErrorKind::convergence, "no bracket for inverse of " + format_real(y));
      }
      lo = a;
      hi = b;
    }
  }

  double glo = g(lo);
  double ghi = g(hi);
  if (glo == 0.0) return lo;
  if (ghi == 0.0) return hi;
  for (int it = 0; it < kMaxBisection; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double gm = g(mid);
    if (std::abs(gm) <= tol) return mid;
    if (gm < 0.0) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
      ghi = gm;
    }
  }
  const double best = std::abs(glo) <= std::abs(ghi) ? lo : hi;
  if (std::min(std::abs(glo), std::abs(ghi)) > 1e-8 * std::max(1.0, std::abs(y)))
    throw Error(ErrorKind::convergence, "bisection did not converge for " + format_real(y));
  return best;
}

inline double invert(const Node& n, double y) {
  if (n.dir == Direction::none) throw Error(ErrorKind::not_invertible, "map is not monotone");
  if (std::isnan(y)) throw Error(ErrorKind::range, "value is NaN");
  const Interval& r = n.range;
  if (y < r.lo) {
    if (r.lo - y > slack(r.lo))
      throw Error(ErrorKind::range, "value " + format_real(y) + " below range [" + format_real(r.lo) +
                                        "," + format_real(r.hi) + "]");
    y = r.lo;
  }
  if (y > r.hi) {
    if (y - r.hi > slack(r.hi))
      throw Error(ErrorKind::range, "value " + format_real(y) + " above range [" + format_real(r.lo) +
                                        "," + format_real(r.hi) + "]");
    y = r.hi;
  }
  // Range endpoints map back to domain endpoints exactly.
  if (y == r.lo) return n.dir == Direction::increasing ? n.domain.lo : n.domain.hi;
  if (y == r.hi) return n.dir == Direction::increasing ? n.domain.hi : n.domain.lo;
  if (auto t = n.closed_inverse(y)) return std::clamp(*t, n.domain.lo, n.domain.hi);
  return bisect_inverse(n, y);
}

/// Fills in the range of a monotone node from its endpoint limits.
template <class N>
std::shared_ptr<const N> finalize(std::shared_ptr<N> n) {
  if (n->dir != Direction::none) {
    const double a = n->eval(n->domain.lo);
    const double b = n->eval(n->domain.hi);
    if (std::isnan(a) || std::isnan(b)) {
      n->dir = Direction::none;
    } else {
      n->range = {std::min(a, b), std::max(a, b)};
    }
  }
  return n;
}

// ---------------------------------------------------------------------------
// Leaves

struct IdentityNode final : Node {
  IdentityNode() { dir = Direction::increasing; }
  double eval(double t) const override { return t; }
  std::optional<double> closed_inverse(double y) const override { return y; }
  void print(std::ostream& os) const override { os << "id"; }
};

struct AffineNode final : Node {
  double a, b;
  AffineNode(double a_, double b_) : a(a_), b(b_) {
    dir = a > 0 ? Direction::increasing : Direction::decreasing;
  }
  double eval(double t) const override { return a * t + b; }
  std::optional<double> closed_inverse(double y) const override { return (y - b) / a; }
  void print(std::ostream& os) const override { os << "affine:" << format_real(a) << "," << format_real(b); }
};

struct PowerOddNode final : Node {
  double p;
  explicit PowerOddNode(double p_) : p(p_) { dir = Direction::increasing; }
  double eval(double t) const override { return std::copysign(std::pow(std::abs(t), p), t); }
  std::optional<double> closed_inverse(double y) const override {
    return std::copysign(std::pow(std::abs(y), 1.0 / p), y);
  }
  void print(std::ostream& os) const override { os << "pow:" << format_real(p); }
};

struct Exp1Node final : Node {
  Exp1Node() { dir = Direction::increasing; }
  double eval(double t) const override { return std::expm1(t); }
  std::optional<double> closed_inverse(double y) const override { return std::log1p(y); }
  void print(std::ostream& os) const override { os << "exp1"; }
};

// 2(1+a)t + t^2 for t >= 0 and 2(1-a)t - t^2 for t <= 0.
struct RidgeNode final : Node {
  double a;
  explicit RidgeNode(double a_) : a(a_) { dir = Direction::increasing; }
  double eval(double t) const override {
    if (t >= 0.0) return 2.0 * (1.0 + a) * t + t * t;
    if (std::isinf(t)) return -kInf;
    return 2.0 * (1.0 - a) * t - t * t;
  }
  std::optional<double> closed_inverse(double y) const override {
    if (y >= 0.0) {
      const double c = 1.0 + a;
      return y / (c + std::sqrt(c * c + y));
    }
    const double c = 1.0 - a;
    return y / (c + std::sqrt(c * c - y));
  }
  void print(std::ostream& os) const override { os << "ridge:" << format_real(a); }
  void breakpoints(std::vector<double>& out) const override { out.push_back(0.0); }
};

struct SinMonoNode final : Node {
  SinMonoNode() {
    domain = {-std::numbers::pi / 2, std::numbers::pi / 2};
    dir = Direction::increasing;
  }
  double eval(double t) const override { return std::sin(t); }
  std::optional<double> closed_inverse(double y) const override { return std::asin(y); }
  void print(std::ostream& os) const override { os << "sinmono"; }
};

// Linear interpolation through the table, linear extrapolation beyond it.
struct PwlNode final : Node {
  std::vector<double> xs, ys;
  PwlNode(std::vector<double> x, std::vector<double> y) : xs(std::move(x)), ys(std::move(y)) {
    bool inc = true;
    bool dec = true;
    for (std::size_t i = 1; i < ys.size(); ++i) {
      inc = inc && ys[i] > ys[i - 1];
      dec = dec && ys[i] < ys[i - 1];
    }
    dir = inc ? Direction::increasing : dec ? Direction::decreasing : Direction::none;
  }
  double segment(std::size_t i, double t) const {
    const double s = (ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i]);
    if (std::isinf(t)) return s == 0.0 ? ys[i] : s * t;
    return ys[i] + s * (t - xs[i]);
  }
  double eval(double t) const override {
    if (t <= xs.front()) return t == xs.front() ? ys.front() : segment(0, t);
    if (t >= xs.back()) return t == xs.back() ? ys.back() : segment(xs.size() - 2, t);
    const auto it = std::upper_bound(xs.begin(), xs.end(), t);
    const std::size_t i = static_cast<std::size_t>(it - xs.begin()) - 1;
    if (t == xs[i]) return ys[i];
    return segment(i, t);
  }
  std::optional<double> closed_inverse(double y) const override {
    // ys is strictly monotone here; work on the increasing orientation.
    const bool inc = dir == Direction::increasing;
    auto below = [&](double a, double b) { return inc ? a < b : a > b; };
    std::size_t i;
    if (!below(ys.front(), y)) {
      i = 0;
    } else if (!below(y, ys.back())) {
      i = ys.size() - 2;
    } else {
      std::size_t lo = 0, hi = ys.size() - 1;
      while (hi - lo > 1) {
        const std::size_t mid = (lo + hi) / 2;
        if (below(y, ys[mid])) hi = mid; else lo = mid;
      }
      i = lo;
    }
    if (y == ys[i]) return xs[i];
    if (y == ys[i + 1]) return xs[i + 1];
    const double s = (ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i]);
    return xs[i] + (y - ys[i]) / s;
  }
  void print(std::ostream& os) const override {
    os << "pwl:";
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (i) os << ";";
      os << format_real(xs[i]) << "," << format_real(ys[i]);
    }
  }
  void breakpoints(std::vector<double>& out) const override { out.insert(out.end(), xs.begin(), xs.end()); }
};

// Non-monotone leaves used for folded maps and densities.

struct SquareNode final : Node {
  double eval(double t) const override { return t * t; }
  void print(std::ostream& os) const override { os << "sq"; }
};

struct AbsNode final : Node {
  double eval(double t) const override { return std::abs(t); }
  void print(std::ostream& os) const override { os << "abs"; }
  void breakpoints(std::vector<double>& out) const override { out.push_back(0.0); }
};

struct SinNode final : Node {
  SinNode() { domain = {-1e8, 1e8}; }
  double eval(double t) const override { return std::sin(t); }
  void print(std::ostream& os) const override { os << "sin"; }
};

struct CosNode final : Node {
  CosNode() { domain = {-1e8, 1e8}; }
  double eval(double t) const override { return std::cos(t); }
  void print(std::ostream& os) const override { os << "cos"; }
};

struct ExpNode final : Node {
  ExpNode() { dir = Direction::increasing; }
  double eval(double t) const override { return std::exp(t); }
  std::optional<double> closed_inverse(double y) const override { return std::log(y); }
  void print(std::ostream& os) const override { os << "exp"; }
};

// c0 + c1 t + c2 t^2 + ...
struct PolyNode final : Node {
  std::vector<double> c;
  explicit PolyNode(std::vector<double> coeffs) : c(std::move(coeffs)) {}
  double eval(double t) const override {
    double acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * t + *it;
    return acc;
  }
  void print(std::ostream& os) const override {
    os << "poly:";
    for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << format_real(c[i]);
  }
};

// ---------------------------------------------------------------------------
// Combinators

struct ComposeNode final : Node {
  NodePtr outer, inner;
  ComposeNode(NodePtr o, NodePtr i) : outer(std::move(o)), inner(std::move(i)) {}
  double eval(double t) const override { return eval_checked(*outer, inner->eval(t)); }
  std::optional<double> closed_inverse(double y) const override { return invert(*inner, invert(*outer, y)); }
  void print(std::ostream& os) const override {
    os << "comp(";
    outer->print(os);
    os << ",";
    inner->print(os);
    os << ")";
  }
  void breakpoints(std::vector<double>& out) const override {
    inner->breakpoints(out);
    std::vector<double> ob;
    outer->breakpoints(ob);
    if (inner->dir == Direction::none) return;
    for (double b : ob) {
      if (b >= inner->range.lo && b <= inner->range.hi) {
        try {
          out.push_back(invert(*inner, b));
        } catch (const Error&) {
        }
      }
    }
  }
};

struct InverseNode final : Node {
  NodePtr inner;
  explicit InverseNode(NodePtr i) : inner(std::move(i)) {}
  double eval(double t) const override { return invert(*inner, t); }
  std::optional<double> closed_inverse(double y) const override { return eval_checked(*inner, y); }
  void print(std::ostream& os) const override {
    os << "inv(";
    inner->print(os);
    os << ")";
  }
  void breakpoints(std::vector<double>& out) const override {
    std::vector<double> ib;
    inner->breakpoints(ib);
    for (double b : ib)
      if (inner->domain.contains(b)) out.push_back(inner->eval(b));
  }
};

// f(t) for t >= 0 and -f(-t) for t < 0, with the value 0 pinned at t = 0.
struct OddExtNode final : Node {
  NodePtr inner;
  explicit OddExtNode(NodePtr i) : inner(std::move(i)) {}
  double eval(double t) const override {
    if (t > 0.0) return inner->eval(t);
    if (t < 0.0) return -inner->eval(-t);
    return 0.0;
  }
  std::optional<double> closed_inverse(double y) const override {
    if (y > 0.0) return invert(*inner, y);
    if (y < 0.0) return -invert(*inner, -y);
    return 0.0;
  }
  void print(std::ostream& os) const override {
    os << "odd(";
    inner->print(os);
    os << ")";
  }
  void breakpoints(std::vector<double>& out) const override {
    std::vector<double> ib;
    inner->breakpoints(ib);
    out.push_back(0.0);
    for (double b : ib) {
      if (b > 0.0) {
        out.push_back(b);
        out.push_back(-b);
      }
    }
  }
};

// f(|t|).
struct EvenExtNode final : Node {
  NodePtr inner;
  explicit EvenExtNode(NodePtr i) : inner(std::move(i)) {}
  double eval(double t) const override { return inner->eval(std::abs(t)); }
  void print(std::ostream& os) const override {
    os << "even(";
    inner->print(os);
    os << ")";
  }
  void breakpoints(std::vector<double>& out) const override {
    std::vector<double> ib;
    inner->breakpoints(ib);
    out.push_back(0.0);
    for (double b : ib) {
      if (b > 0.0) {
        out.push_back(b);
        out.push_back(-b);
      }
    }
  }
};

// sgn(t) f(t), with the value 0 at t = 0; may jump there.
struct SgnNode final : Node {
  NodePtr inner;
  explicit SgnNode(NodePtr i) : inner(std::move(i)) { domain = inner->domain; }
  double eval(double t) const override {
    if (t > 0.0) return inner->eval(t);
    if (t < 0.0) return -inner->eval(t);
    return 0.0;
  }
  void print(std::ostream& os) const override {
    os << "sgn(";
    inner->print(os);
    os << ")";
  }
  void breakpoints(std::vector<double>& out) const override {
    inner->breakpoints(out);
    out.push_back(0.0);
  }
};

// 1 - g(1 - s) on [0,1].
struct TildeNode final : Node {
  NodePtr inner;
  explicit TildeNode(NodePtr i) : inner(std::move(i)) {
    domain = Interval::unit();
    dir = inner->dir;
  }
  double eval(double s) const override { return 1.0 - inner->eval(1.0 - s); }
  std::optional<double> closed_inverse(double y) const override { return 1.0 - invert(*inner, 1.0 - y); }
  void print(std::ostream& os) const override {
    os << "tilde(";
    inner->print(os);
    os << ")";
  }
  void breakpoints(std::vector<double>& out) const override {
    std::vector<double> ib;
    inner->breakpoints(ib);
    for (double b : ib)
      if (b >= 0.0 && b <= 1.0) out.push_back(1.0 - b);
  }
};

struct NegateNode final : Node {
  NodePtr inner;
  explicit NegateNode(NodePtr i) : inner(std::move(i)) {
    domain = inner->domain;
    dir = flip(inner->dir);
  }
  double eval(double t) const override { return -inner->eval(t); }
  std::optional<double> closed_inverse(double y) const override { return invert(*inner, -y); }
  void print(std::ostream& os) const override {
    os << "neg(";
    inner->print(os);
    os << ")";
  }
  void breakpoints(std::vector<double>& out) const override { inner->breakpoints(out); }
};

// left(t) for t < split, right(t) for t >= split.
struct PieceNode final : Node {
  double split;
  NodePtr left, right;
  PieceNode(double s, NodePtr l, NodePtr r) : split(s), left(std::move(l)), right(std::move(r)) {}
  double eval(double t) const override { return t < split ? left->eval(t) : right->eval(t); }
  std::optional<double> closed_inverse(double y) const override {
    const double v = right->eval(split);
    const bool use_left = dir == Direction::increasing ? y < v : y > v;
    return use_left ? invert(*left, y) : invert(*right, y);
  }
  void print(std::ostream& os) const override {
    os << "piece(" << format_real(split) << ",";
    left->print(os);
    os << ",";
    right->print(os);
    os << ")";
  }
  void breakpoints(std::vector<double>& out) const override {
    std::vector<double> lb, rb;
    left->breakpoints(lb);
    right->breakpoints(rb);
    out.push_back(split);
    for (double b : lb)
      if (b < split) out.push_back(b);
    for (double b : rb)
      if (b > split) out.push_back(b);
  }
};

// A map viewed on a sub-interval, optionally with exact endpoint values.
struct RestrictNode final : Node {
  NodePtr inner;
  std::optional<double> at_lo, at_hi;
  RestrictNode(NodePtr i, Interval d, std::optional<double> lo_val, std::optional<double> hi_val)
      : inner(std::move(i)), at_lo(lo_val), at_hi(hi_val) {
    domain = d;
  }
  double eval(double t) const override {
    if (at_lo && t == domain.lo) return *at_lo;
    if (at_hi && t == domain.hi) return *at_hi;
    return inner->eval(t);
  }
  std::optional<double> closed_inverse(double y) const override {
    if (inner->dir == Direction::none) return std::nullopt;
    return invert(*inner, y);
  }
  void print(std::ostream& os) const override { inner->print(os); }
  void breakpoints(std::vector<double>& out) const override {
    std::vector<double> ib;
    inner->breakpoints(ib);
    for (double b : ib)
      if (b > domain.lo && b < domain.hi) out.push_back(b);
  }
};

inline double adaptive_simpson(const Node& f, double a, double b, double fa, double fm, double fb,
                               double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f.eval(lm);
  const double frm = f.eval(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double diff = left + right - whole;
  if (depth <= 0 || std::abs(diff) <= 15.0 * tol) return left + right + diff / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

inline constexpr double kMaxIntegrationSpan = 1e5;

/// Integral of a density from 0 to t.
inline double integrate_from_zero(const Node& density, double t) {
  if (t == 0.0) return 0.0;
  if (std::abs(t) > kMaxIntegrationSpan)
    throw Error(ErrorKind::convergence, "integration span " + format_real(t) + " is too long");
  const double a = std::min(0.0, t);
  const double b = std::max(0.0, t);
  // Split into unit panels so the tolerance stays relative to the panel size.
  const int panels = std::max(1, static_cast<int>(std::ceil(b - a)));
  const double h = (b - a) / panels;
  double total = 0.0;
  for (int i = 0; i < panels; ++i) {
    const double x0 = a + i * h;
    const double x1 = i + 1 == panels ? b : x0 + h;
    const double f0 = density.eval(x0);
    const double f1 = density.eval(x1);
    const double fm = density.eval(0.5 * (x0 + x1));
    const double whole = (x1 - x0) / 6.0 * (f0 + 4.0 * fm + f1);
    total += adaptive_simpson(density, x0, x1, f0, fm, f1, whole, 1e-14, 40);
  }
  return t > 0.0 ? total : -total;
}

struct AntiderivativeNode final : Node {
  NodePtr density;
  explicit AntiderivativeNode(NodePtr d) : density(std::move(d)) { dir = Direction::increasing; }
  double eval(double t) const override {
    if (std::isinf(t)) return t;
    return integrate_from_zero(*density, t);
  }
  void print(std::ostream& os) const override {
    os << "int(";
    density->print(os);
    os << ")";
  }
};

}  // namespace detail

// ---------------------------------------------------------------------------

class MonotoneMap {
 public:
  MonotoneMap() : node_(detail::finalize(std::make_shared<detail::IdentityNode>())) {}
  explicit MonotoneMap(detail::NodePtr node) : node_(std::move(node)) {}

  /// Evaluates at t; throws DomainError outside the domain.
  double operator()(double t) const { return detail::eval_checked(*node_, t); }

  /// Solves f(t) = y. Closed form where the tree allows it, bisection otherwise.
  double inverse(double y) const { return detail::invert(*node_, y); }

  Interval domain() const { return node_->domain; }
  Interval range() const { return node_->range; }
  Direction direction() const { return node_->dir; }
  bool is_monotone() const { return node_->dir != Direction::none; }
  bool is_increasing() const { return node_->dir == Direction::increasing; }
  bool is_identity() const { return dynamic_cast<const detail::IdentityNode*>(node_.get()) != nullptr; }

  /// Points where one-sided derivatives may differ, sorted and deduplicated.
  std::vector<double> breakpoints() const {
    std::vector<double> out;
    node_->breakpoints(out);
    const Interval d = domain();
    std::erase_if(out, [&](double b) { return !std::isfinite(b) || !d.contains(b); });
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  /// Canonical text in the function-spec grammar.
  std::string spec() const {
    std::ostringstream os;
    node_->print(os);
    return os.str();
  }

  const detail::NodePtr& node() const { return node_; }

 private:
  detail::NodePtr node_;
};

inline std::ostream& operator<<(std::ostream& os, const MonotoneMap& f) { return os << f.spec(); }

// ---------------------------------------------------------------------------
// Builders

inline MonotoneMap identity_map() { return MonotoneMap(); }

inline MonotoneMap affine(double a, double b) {
  if (a == 0.0 || !std::isfinite(a) || !std::isfinite(b))
    throw Error(ErrorKind::not_monotone, "affine map needs a finite nonzero slope");
  return MonotoneMap(detail::finalize(std::make_shared<detail::AffineNode>(a, b)));
}

/// sgn(t)|t|^p.
inline MonotoneMap power_odd(double p) {
  if (!(p > 0.0) || !std::isfinite(p)) throw Error(ErrorKind::not_monotone, "pow needs p > 0");
  if (p == 1.0) return identity_map();
  return MonotoneMap(detail::finalize(std::make_shared<detail::PowerOddNode>(p)));
}

/// e^t - 1.
inline MonotoneMap exp1() { return MonotoneMap(detail::finalize(std::make_shared<detail::Exp1Node>())); }

/// The ridge profile 2(1+a)t + t^2 (t >= 0), 2(1-a)t - t^2 (t <= 0); increasing for |a| <= 1.
inline MonotoneMap ridge(double a) {
  if (!(std::abs(a) <= 1.0)) throw Error(ErrorKind::not_monotone, "ridge needs |a| <= 1");
  return MonotoneMap(detail::finalize(std::make_shared<detail::RidgeNode>(a)));
}

/// sin(t) on [-pi/2, pi/2].
inline MonotoneMap sinmono() { return MonotoneMap(detail::finalize(std::make_shared<detail::SinMonoNode>())); }

inline MonotoneMap pwl(std::vector<std::pair<double, double>> points) {
  if (points.size() < 2) throw Error(ErrorKind::parse, "pwl needs at least two points");
  std::vector<double> xs, ys;
  for (const auto& [x, y] : points) {
    if (!std::isfinite(x) || !std::isfinite(y)) throw Error(ErrorKind::parse, "pwl point not finite");
    if (!xs.empty() && !(x > xs.back())) throw Error(ErrorKind::parse, "pwl abscissae must increase");
    xs.push_back(x);
    ys.push_back(y);
  }
  return MonotoneMap(detail::finalize(std::make_shared<detail::PwlNode>(std::move(xs), std::move(ys))));
}

inline MonotoneMap square() { return MonotoneMap(std::make_shared<detail::SquareNode>()); }
inline MonotoneMap abs_value() { return MonotoneMap(std::make_shared<detail::AbsNode>()); }
inline MonotoneMap sine() { return MonotoneMap(std::make_shared<detail::SinNode>()); }
inline MonotoneMap cosine() { return MonotoneMap(std::make_shared<detail::CosNode>()); }
inline MonotoneMap exponential() { return MonotoneMap(detail::finalize(std::make_shared<detail::ExpNode>())); }

inline MonotoneMap polynomial(std::vector<double> coeffs) {
  if (coeffs.empty()) throw Error(ErrorKind::parse, "poly needs coefficients");
  return MonotoneMap(std::make_shared<detail::PolyNode>(std::move(coeffs)));
}

namespace detail {

/// Direction of an arbitrary node on a window, by dense sampling.
inline Direction sampled_direction(const Node& n, Interval window, int samples = 4001) {
  if (!window.is_finite()) {
    const double w = std::max({10.0, std::isfinite(window.lo) ? 2.0 * std::abs(window.lo) : 0.0,
                               std::isfinite(window.hi) ? 2.0 * std::abs(window.hi) : 0.0});
    if (!std::isfinite(window.lo)) window.lo = -w;
    if (!std::isfinite(window.hi)) window.hi = w;
  }
  bool inc = true;
  bool dec = true;
  double prev = n.eval(window.lo);
  for (int i = 1; i < samples; ++i) {
    const double t = window.lo + window.width() * i / (samples - 1);
    const double v = n.eval(t);
    inc = inc && v > prev;
    dec = dec && v < prev;
    prev = v;
  }
  return inc ? Direction::increasing : dec ? Direction::decreasing : Direction::none;
}

}  // namespace detail

/// The same map on a sub-interval of its domain. Non-monotone maps that are
/// monotone on the sub-interval (t^2 on [0,inf)) become monotone.
inline MonotoneMap restrict(const MonotoneMap& f, Interval d, std::optional<double> at_lo = std::nullopt,
                            std::optional<double> at_hi = std::nullopt) {
  const Interval fd = f.domain();
  if (d.lo < fd.lo - detail::slack(fd.lo) || d.hi > fd.hi + detail::slack(fd.hi) || !(d.lo < d.hi))
    throw Error(ErrorKind::domain_mismatch, "restriction [" + format_real(d.lo) + "," + format_real(d.hi) +
                                                "] not inside domain of " + f.spec());
  auto n = std::make_shared<detail::RestrictNode>(f.node(), d, at_lo, at_hi);
  n->dir = f.is_monotone() ? f.direction() : detail::sampled_direction(*f.node(), d);
  if (n->dir == Direction::none) return MonotoneMap(n);
  return MonotoneMap(detail::finalize(std::move(n)));
}

/// f restricted to [0,1] with f(0)=0 and f(1)=1 made exact. The caller has
/// checked that the endpoints already hold to rounding.
inline MonotoneMap pin_unit(const MonotoneMap& f) { return restrict(f, Interval::unit(), 0.0, 1.0); }

/// f restricted to [0,inf) with f(0)=0 made exact.
inline MonotoneMap pin_half_line(const MonotoneMap& f) {
  return restrict(f, {0.0, f.domain().hi}, 0.0, std::nullopt);
}

/// outer(inner(t)); the domain shrinks to where inner lands inside outer's domain.
inline MonotoneMap compose(const MonotoneMap& outer, const MonotoneMap& inner) {
  if (outer.is_identity()) return inner;
  if (inner.is_identity()) return outer;
  Interval d = inner.domain();
  const Interval od = outer.domain();
  if (inner.is_monotone() && !(std::isinf(od.lo) && std::isinf(od.hi))) {
    const Interval r = inner.range();
    const double lo = std::max(r.lo, od.lo);
    const double hi = std::min(r.hi, od.hi);
    if (lo > hi + detail::slack(hi))
      throw Error(ErrorKind::domain_mismatch, "range of " + inner.spec() + " misses domain of " + outer.spec());
    if (lo > r.lo || hi < r.hi) {
      const double a = inner.inverse(std::min(lo, hi));
      const double b = inner.inverse(std::max(lo, hi));
      d = {std::min(a, b), std::max(a, b)};
    }
  }
  auto n = std::make_shared<detail::ComposeNode>(outer.node(), inner.node());
  n->domain = d;
  if (outer.is_monotone() && inner.is_monotone())
    n->dir = outer.direction() == inner.direction() ? Direction::increasing : Direction::decreasing;
  return MonotoneMap(detail::finalize(std::move(n)));
}

inline MonotoneMap invert(const MonotoneMap& f) {
  if (!f.is_monotone()) throw Error(ErrorKind::not_invertible, f.spec() + " is not monotone");
  if (auto* inv = dynamic_cast<const detail::InverseNode*>(f.node().get())) return MonotoneMap(inv->inner);
  if (f.is_identity()) return f;
  auto n = std::make_shared<detail::InverseNode>(f.node());
  n->domain = f.range();
  n->dir = f.direction();
  return MonotoneMap(detail::finalize(std::move(n)));
}

inline MonotoneMap negate(const MonotoneMap& f) {
  return MonotoneMap(detail::finalize(std::make_shared<detail::NegateNode>(f.node())));
}

/// left(t) for t < split, right(t) for t >= split.
inline MonotoneMap piecewise(double split, const MonotoneMap& left, const MonotoneMap& right) {
  const Interval ld = left.domain();
  const Interval rd = right.domain();
  if (!(ld.hi >= split - detail::slack(split)) || !(rd.lo <= split + detail::slack(split)) || ld.lo > split ||
      rd.hi < split)
    throw Error(ErrorKind::domain_mismatch, "piece domains do not meet at " + format_real(split));
  auto n = std::make_shared<detail::PieceNode>(split, left.node(), right.node());
  n->domain = {ld.lo, rd.hi};
  if (left.is_monotone() && left.direction() == right.direction()) {
    const double a = left.node()->eval(std::min(split, ld.hi));
    const double b = right.node()->eval(std::max(split, rd.lo));
    if (std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a))) n->dir = left.direction();
  }
  return MonotoneMap(detail::finalize(std::move(n)));
}

/// Odd extension of an increasing p: [0,b] -> [0,c] with p(0) = 0.
inline MonotoneMap odd_extend(const MonotoneMap& p) {
  const Interval d = p.domain();
  if (d.lo > 0.0 || d.hi <= 0.0)
    throw Error(ErrorKind::domain_mismatch, "odd extension needs a domain starting at 0: " + p.spec());
  if (p.is_monotone()) {
    if (!p.is_increasing()) throw Error(ErrorKind::not_monotone, "odd extension needs an increasing map");
    if (std::abs(p(0.0)) > 1e-12) throw Error(ErrorKind::not_fixing_origin, p.spec() + " does not fix 0");
  }
  auto n = std::make_shared<detail::OddExtNode>(p.node());
  n->domain = {-d.hi, d.hi};
  n->dir = p.is_monotone() ? Direction::increasing : Direction::none;
  return MonotoneMap(detail::finalize(std::move(n)));
}

/// f(|t|); folds any map into an even one.
inline MonotoneMap even_extend(const MonotoneMap& f) {
  const Interval d = f.domain();
  if (d.lo > 0.0 || d.hi <= 0.0)
    throw Error(ErrorKind::domain_mismatch, "even extension needs a domain starting at 0: " + f.spec());
  auto n = std::make_shared<detail::EvenExtNode>(f.node());
  n->domain = {-d.hi, d.hi};
  return MonotoneMap(std::move(n));
}

/// sgn(t) f(t); a folding helper with no monotonicity or continuity requirement.
inline MonotoneMap sign_times(const MonotoneMap& f) {
  if (!f.domain().contains(0.0)) throw Error(ErrorKind::domain_mismatch, "sgn needs 0 in the domain: " + f.spec());
  return MonotoneMap(std::make_shared<detail::SgnNode>(f.node()));
}

/// g~(s) = 1 - g(1-s), for g fixing 0 and 1.
inline MonotoneMap tilde(const MonotoneMap& g) {
  if (!g.domain().contains(Interval::unit()))
    throw Error(ErrorKind::domain_mismatch, "tilde needs a map defined on [0,1]: " + g.spec());
  if (std::abs(g(0.0)) > 1e-12 || std::abs(g(1.0) - 1.0) > 1e-12)
    throw Error(ErrorKind::not_fixing_endpoints, g.spec() + " does not fix 0 and 1");
  if (auto* t = dynamic_cast<const detail::TildeNode*>(g.node().get())) return MonotoneMap(t->inner);
  if (g.is_identity()) return g;
  return MonotoneMap(detail::finalize(std::make_shared<detail::TildeNode>(g.node())));
}

/// h_+(s) = h(s) for s >= 0.
inline MonotoneMap positive_part(const MonotoneMap& h) {
  const Interval d = h.domain();
  if (d.lo > 0.0 || d.hi <= 0.0) throw Error(ErrorKind::domain_mismatch, "positive part needs 0 in domain");
  return restrict(h, {0.0, d.hi});
}

/// h_-(s) = -h(-s) for s >= 0.
inline MonotoneMap negative_part(const MonotoneMap& h) {
  const Interval d = h.domain();
  if (d.lo >= 0.0 || d.hi < 0.0) throw Error(ErrorKind::domain_mismatch, "negative part needs 0 in domain");
  return restrict(negate(compose(h, affine(-1.0, 0.0))), {0.0, -d.lo});
}

/// Glues half-line parts back into one map: plus(t) for t >= 0, -minus(-t) for t < 0.
inline MonotoneMap assemble_parts(const MonotoneMap& plus, const MonotoneMap& minus) {
  return piecewise(0.0, negate(compose(minus, affine(-1.0, 0.0))), plus);
}

/// Antiderivative of a positive density, anchored at 0, viewed on `domain`.
inline MonotoneMap antiderivative(const MonotoneMap& density, Interval domain = Interval::real_line()) {
  auto n = std::make_shared<detail::AntiderivativeNode>(density.node());
  n->domain = domain;
  return MonotoneMap(detail::finalize(std::move(n)));
}

// ---------------------------------------------------------------------------
// Numerics on maps

struct MonotoneReport {
  bool pass = true;
  Direction observed = Direction::none;
  std::optional<std::pair<double, double>> violation;  // first offending (t1, t2)
};

/// Grid check of strict monotonicity. Infinite domains are clipped to a finite window.
inline MonotoneReport check_monotone(const MonotoneMap& f, int grid_size, std::optional<Interval> window = {}) {
  if (grid_size < 2) throw Error(ErrorKind::domain, "grid_size must be at least 2");
  Interval w = window.value_or(f.domain());
  if (!w.is_finite()) {
    double reach = 10.0;
    for (double b : f.breakpoints()) reach = std::max(reach, 2.0 * std::abs(b));
    if (!std::isfinite(w.lo)) w.lo = std::isfinite(w.hi) ? std::min(-reach, w.hi - reach) : -reach;
    if (!std::isfinite(w.hi)) w.hi = std::max(reach, w.lo + reach);
  }
  MonotoneReport rep;
  rep.observed = f.direction();
  double t_prev = w.lo;
  double v_prev = f(t_prev);
  for (int i = 1; i < grid_size; ++i) {
    const double t = i + 1 == grid_size ? w.hi : w.lo + w.width() * i / (grid_size - 1);
    const double v = f(t);
    Direction step = v > v_prev ? Direction::increasing : v < v_prev ? Direction::decreasing : Direction::none;
    if (rep.observed == Direction::none && step != Direction::none && i == 1) rep.observed = step;
    if (step != rep.observed) {
      rep.pass = false;
      rep.violation = {t_prev, t};
      return rep;
    }
    t_prev = t;
    v_prev = v;
  }
  return rep;
}

struct OneSided {
  double left;
  double right;
};

namespace detail {

inline double central_richardson(const MonotoneMap& f, double t, double h) {
  auto d = [&](double s) { return (f(t + s) - f(t - s)) / (2.0 * s); };
  return (4.0 * d(0.5 * h) - d(h)) / 3.0;
}

inline double right_richardson(const MonotoneMap& f, double t, double h) {
  const double ft = f(t);
  auto d = [&](double s) { return (f(t + s) - ft) / s; };
  return 2.0 * d(0.5 * h) - d(h);
}

inline double left_richardson(const MonotoneMap& f, double t, double h) {
  const double ft = f(t);
  auto d = [&](double s) { return (ft - f(t - s)) / s; };
  return 2.0 * d(0.5 * h) - d(h);
}

}  // namespace detail

/// Left and right derivatives by extrapolated one-sided differences.
inline OneSided one_sided_derivatives(const MonotoneMap& f, double t, double step = 1e-6) {
  const Interval d = f.domain();
  OneSided out{std::nan(""), std::nan("")};
  if (t - step >= d.lo) out.left = detail::left_richardson(f, t, step);
  if (t + step <= d.hi) out.right = detail::right_richardson(f, t, step);
  if (std::isnan(out.left)) out.left = out.right;
  if (std::isnan(out.right)) out.right = out.left;
  return out;
}

/// Derivative at t. Central differences away from breakpoints, one-sided
/// stencils when a breakpoint falls inside the stencil, and the mean of the
/// one-sided values at a breakpoint itself.
inline double derivative(const MonotoneMap& f, double t, double step = 1e-6) {
  const Interval d = f.domain();
  for (double b : f.breakpoints()) {
    const double gap = std::abs(b - t);
    if (gap <= 1e-14 * std::max(1.0, std::abs(t))) {
      const OneSided s = one_sided_derivatives(f, t, step);
      return 0.5 * (s.left + s.right);
    }
    if (gap < step) return b > t ? detail::left_richardson(f, t, step) : detail::right_richardson(f, t, step);
  }
  if (t - step < d.lo) return detail::right_richardson(f, t, step);
  if (t + step > d.hi) return detail::left_richardson(f, t, step);
  return detail::central_richardson(f, t, step);
}

}  // namespace lorentz
