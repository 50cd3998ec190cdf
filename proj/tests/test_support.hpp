#pragma once

// Hand-rolled generators and independent oracles shared by the test suites.

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "lorentz/lorentz.hpp"

namespace lorentz::testing {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

/// Increasing piecewise-linear bijection of [0,inf) through the origin.
inline MonotoneMap random_ray(Rng& rng, int knots = 4) {
  std::vector<std::pair<double, double>> pts{{0.0, 0.0}};
  double x = 0, y = 0;
  for (int i = 0; i < knots; ++i) {
    x += uniform(rng, 0.2, 1.0);
    y += uniform(rng, 0.2, 1.5);
    pts.emplace_back(x, y);
  }
  return restrict(pwl(pts), Interval::half_line());
}

/// Increasing bijection of [0,1] fixing the endpoints, piecewise linear.
inline MonotoneMap random_side(Rng& rng, int knots = 3) {
  std::vector<double> xs{0.0, 1.0}, ys{0.0, 1.0};
  for (int i = 0; i < knots; ++i) {
    xs.push_back(uniform(rng, 0.05, 0.95));
    ys.push_back(uniform(rng, 0.05, 0.95));
  }
  std::sort(xs.begin(), xs.end());
  std::sort(ys.begin(), ys.end());
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < xs.size(); ++i) pts.emplace_back(xs[i], ys[i]);
  return pin_unit(pwl(pts));
}

/// Smooth increasing side: t^q, or (e^{ct} - 1)/(e^c - 1).
inline MonotoneMap random_smooth_side(Rng& rng) {
  if (uniform(rng, 0, 1) < 0.5) return pin_unit(power_odd(uniform(rng, 0.4, 2.5)));
  const double c = uniform(rng, 0.3, 3.0);
  return pin_unit(compose(affine(1.0 / std::expm1(c), 0.0), compose(exp1(), affine(c, 0.0))));
}

/// Self-similar bijection f(s) = 2^-n g(2^n s) with g(t) = 1 + (t-1)^q on [1,2].
struct SelfSimilarNode final : detail::Node {
  double q;
  explicit SelfSimilarNode(double q_) : q(q_) {
    domain = Interval::half_line();
    range = Interval::half_line();
    dir = Direction::increasing;
  }
  static double apply(double s, double power) {
    if (s <= 0) return 0;
    int e = 0;
    const double m = std::frexp(s, &e);  // s = m 2^e, m in [0.5, 1)
    return std::ldexp(1 + std::pow(2 * m - 1, power), e - 1);
  }
  double eval(double s) const override { return apply(s, q); }
  std::optional<double> closed_inverse(double y) const override { return apply(y, 1 / q); }
  void print(std::ostream& os) const override { os << "selfsim:" << q; }
};

inline MonotoneMap self_similar(double q) { return MonotoneMap(std::make_shared<SelfSimilarNode>(q)); }

/// h(X) = f(a1 X), -f(a3 |X|); k(Y) = f(a2 Y), -f(a4 |Y|).
inline LCMap example2_map(double q, double a1, double a2, double a3, double a4) {
  const MonotoneMap f = self_similar(q);
  auto side = [&](double a) { return compose(f, restrict(affine(a, 0.0), Interval::half_line())); };
  return LCMap(assemble_parts(side(a1), side(a3)), assemble_parts(side(a2), side(a4)));
}

/// Symmetry-class figure inputs with the table row each belongs to.
struct FigureCase {
  const char* label;
  const char* h;
  const char* k;
  int table;  // 0: no D4 symmetry
  int row;
};

inline const std::vector<FigureCase>& figure_cases() {
  static const std::vector<FigureCase> cases = {
      {"13a", "sq", "abs", 4, 1},
      {"13b", "sq", "id", 4, 2},
      {"13c", "odd(sq)", "abs", 4, 3},
      {"13d", "odd(sq)", "id", 4, 4},
      {"13e", "sq", "odd(sq)", 4, 2},
      {"13f", "sin", "comp(pow:0.5,abs)", 4, 3},
      {"13g", "sgn(sin)", "id", 4, 2},
      {"13h", "sgn(sin)", "sgn(cos)", 4, 2},
      {"14a", "piece(0,poly:0,1,1,poly:0,3,1)", "id", 5, 4},
      {"14b", "piece(0,poly:0,1,1,poly:0,3,1)", "sq", 5, 3},
      {"14c", "cos", "poly:0,-0.5,0.5", 5, 1},
      {"15a", "piece(0,id,sq)", "piece(0,poly:0,3,1,poly:0,1,-1)", 0, 0},
      {"15b", "piece(0,poly:0,1,1,poly:0,3,1)", "piece(0,poly:0,3,1,poly:0,1,1)", 0, 0},
      {"15c", "piece(0,poly:0,1,-1,poly:0,3,1)", "piece(0,poly:0,3,1,poly:0,1,-1)", 0, 0},
  };
  return cases;
}

inline double max_abs_diff(const MonotoneMap& a, const MonotoneMap& b, const std::vector<double>& ts) {
  double worst = 0;
  for (double t : ts) worst = std::max(worst, std::abs(a(t) - b(t)));
  return worst;
}

inline std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out;
  for (int i = 0; i < n; ++i) out.push_back(lo + (hi - lo) * i / (n - 1));
  return out;
}

}  // namespace lorentz::testing
