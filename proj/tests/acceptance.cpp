// Acceptance suite: one PASS/FAIL line per criterion.
// Usage: acceptance <path-to-lcmap>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include <unistd.h>

#include "test_support.hpp"

using namespace lorentz;
using namespace lorentz::testing;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

Outcome outcome(bool pass, const std::string& detail) { return {pass, detail}; }

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

Outcome ridge_contour() {
  const double a = 0.5;
  const LCMap m(ridge(a), ridge(a));
  // The contour is solved over the X of each closed-form point.
  double worst = 0;
  for (double x : linspace(-3, 3, 201)) {
    const double y = -a * std::abs(x) / (1 + std::abs(x));
    const PointChar p = contour_point(m, Family::v, 0.0, x + y);
    worst = std::max(worst, std::abs(from_characteristic(p).y - y));
  }
  double axis = 0;
  for (double X : linspace(-3, 3, 61))
    axis = std::max(axis, std::abs(from_characteristic(contour_point(m, Family::u, 0.0, X)).x));
  return outcome(worst <= 1e-9 && axis <= 1e-12, "v=0 dev " + sci(worst) + ", u=0 |x| " + sci(axis));
}

Outcome folded_square() {
  const LCMap m(square(), square());
  double worst = 0;
  for (double x : linspace(-2, 2, 21))
    for (double y : linspace(-2, 2, 21)) {
      const PointXY q = m({x, y});
      worst = std::max({worst, std::abs(q.x - 2 * x * y), std::abs(q.y - (x * x + y * y))});
    }
  return outcome(worst <= 1e-12, "max dev " + sci(worst));
}

Outcome crossing_rays() {
  Rng rng(1003);
  double cyc = 0, on = 0;
  for (int i = 0; i < 50; ++i) {
    RayFamily r;
    const int miss = 1 + i % 4;
    for (int j = 1; j <= 4; ++j)
      if (j != miss) r.g[j - 1] = random_ray(rng);
    const RayFamily full = complete(r);
    cyc = std::max(cyc, cyclic_residual(full));
    const LCMap m = realize_crossing(full, random_ray(rng));
    for (double t : linspace(0.04, 4, 25)) {
      const std::pair<Family, PointChar> pts[] = {{Family::u, {t, full.at(1)(t)}},
                                                  {Family::v, {-full.at(2)(t), t}},
                                                  {Family::u, {-t, -full.at(3)(t)}},
                                                  {Family::v, {full.at(4)(t), -t}}};
      for (const auto& [fam, p] : pts) {
        const PointChar q = m.eval_char(p);
        on = std::max(on, std::abs(contour_residual(m, fam, 0.0, p)) / std::max({1.0, std::abs(q.X), std::abs(q.Y)}));
      }
    }
  }
  return outcome(cyc < 1e-9 && on <= 1e-8, "cyclic " + sci(cyc) + ", on-contour " + sci(on));
}

Outcome gauge() {
  Rng rng(1004);
  double shared = 0, odd = 0;
  for (int i = 0; i < 20; ++i) {
    RayFamily r;
    for (int j = 0; j < 3; ++j) r.g[j] = random_ray(rng);
    const LCMap m = realize_crossing(r, random_ray(rng));
    const LCMap m2 = gauge_equivalent_crossing(m, {odd_extend(random_ray(rng))});
    for (double X : linspace(-3, 3, 41))
      for (Family fam : {Family::u, Family::v}) {
        const PointChar p = contour_point(m, fam, 0.0, X);
        const PointChar q = m2.eval_char(p);
        shared = std::max(shared, std::abs(contour_residual(m2, fam, 0.0, p)) /
                                      std::max({1.0, std::abs(q.X), std::abs(q.Y)}));
      }
    odd = std::max(odd, detail::oddness_residual(recover_gauge(m, m2).ell, 5.0));
  }
  return outcome(shared <= 1e-8 && odd <= 1e-10, "contours " + sci(shared) + ", oddness " + sci(odd));
}

Outcome quadrilaterals() {
  Rng rng(1005);
  double sides = 0, bounce = 0;
  bool corners = true;
  for (int i = 0; i < 50; ++i) {
    Quadrilateral q;
    for (int j = 1; j <= 4; ++j)
      if (j != 1) q.g[j - 1] = uniform(rng, 0, 1) < 0.5 ? random_side(rng) : random_smooth_side(rng);
    const Quadrilateral full = complete(q);
    const LCMap m = realize_square(full, random_smooth_side(rng));
    const MonotoneMap& h = m.h();
    const MonotoneMap& k = m.k();
    for (double s : linspace(0, 1, 51)) {
      sides = std::max({sides, std::abs(h(s) + k(full.at(1)(1 - s)) - 1), std::abs(k(s) - h(-full.at(2)(1 - s)) - 1),
                        std::abs(h(-s) + k(-full.at(3)(1 - s)) + 1), std::abs(h(full.at(4)(1 - s)) - k(-s) - 1)});
    }
    for (double c : {-1.0, 0.0, 1.0}) corners = corners && h(c) == c && k(c) == c;
    bounce = std::max(bounce, top_side_distance(full.at(1), signal_bounce_top(q)));
  }
  return outcome(sides <= 1e-8 && corners && bounce <= 1e-7,
                 "sides " + sci(sides) + ", corners " + (corners ? "exact" : "off") + ", bounce " + sci(bounce));
}

Outcome rectangle_rule() {
  Rng rng(1006);
  const MonotoneMap ray_bump = parse_spec("pwl:0,0;0.5,0.5;1,1.2;2,2");
  const MonotoneMap side_bump = pin_unit(parse_spec("pwl:0,0;0.5,0.65;1,1"));
  double good = 0, bad = kInf;
  for (int i = 0; i < 5; ++i) {
    RayFamily r;
    for (int j = 0; j < 3; ++j) r.g[j] = random_ray(rng);
    r = complete(r);
    good = std::max(good, rectangle_rule_test(curves_from_rays(r), 200, 10 + i).max_residual);
    r.g[3] = compose(ray_bump, *r.g[3]);
    bad = std::min(bad, rectangle_rule_test(curves_from_rays(r), 200, 20 + i).max_residual);

    Quadrilateral q;
    for (int j = 0; j < 3; ++j) q.g[j] = random_smooth_side(rng);
    q = complete(q);
    good = std::max(good, rectangle_rule_test(curves_from_quad(q), 200, 30 + i).max_residual);
    q.g[3] = compose(side_bump, *q.g[3]);
    bad = std::min(bad, rectangle_rule_test(curves_from_quad(q), 200, 40 + i).max_residual);
  }
  return outcome(good < 1e-6 && bad > 1e-2, "realizable " + sci(good) + ", perturbed min " + sci(bad));
}

Outcome example2() {
  Rng rng(1007);
  double worst = 0, closed = 0;
  for (int i = 0; i < 100; ++i) {
    const double a1 = uniform(rng, 0.5, 2), a2 = uniform(rng, 0.5, 2), a3 = uniform(rng, 0.5, 2),
                 a4 = uniform(rng, 0.5, 2);
    const LCMap m = example2_map(uniform(rng, 0.5, 3), a1, a2, a3, a4);
    const CrossingReport r = crossing_tangent_check(m, {0.0, 0.0});
    worst = std::max(worst, std::abs(r.m_minus * r.m_plus - r.n_minus * r.n_plus));
    closed = std::max({closed, std::abs(r.m_plus - a1 / a2), std::abs(r.m_minus - a3 / a4),
                       std::abs(r.n_plus - a1 / a4), std::abs(r.n_minus - a3 / a2)});
  }
  return outcome(worst < 1e-10 && closed < 1e-8, "product gap " + sci(worst) + ", slope dev " + sci(closed));
}

Outcome unfolding() {
  double quad = 0, trip = 0;
  for (const char* spec : {"sq", "comp(exp1,abs)", "comp(pow:3,abs)"}) {
    const MonotoneMap p = parse_spec(spec);
    const LCMap folded(p, p);
    const LCMap m = unfold(p);
    for (double X : linspace(0.01, 2, 25))
      for (double Y : linspace(0.01, 2, 25)) {
        const PointChar a = folded.eval_char({X, Y});
        const PointChar b = m.eval_char({X, Y});
        quad = std::max({quad, std::abs(a.X - b.X) / std::max(1.0, std::abs(a.X)),
                         std::abs(a.Y - b.Y) / std::max(1.0, std::abs(a.Y))});
      }
    for (double x : linspace(-2, 2, 21))
      for (double y : linspace(-2, 2, 21)) {
        const PointXY back = m.invert(m({x, y}));
        trip = std::max({trip, std::abs(back.x - x), std::abs(back.y - y)});
      }
  }
  return outcome(quad <= 1e-12 && trip <= 1e-9, "first quadrant " + sci(quad) + ", round trip " + sci(trip));
}

Outcome cropping() {
  const MonotoneMap h = parse_spec("odd(sq)");
  double dev = 0;
  std::size_t tangent = 0;
  for (double c : {0.1, 1.0, 5.0}) {
    const MonotoneMap H = crop_map(h, c);
    for (double t : linspace(-3, 3, 121)) {
      const double want = (t >= 0 ? t * t : -t * t) + 2 * c * t;
      dev = std::max(dev, std::abs(H(t) - want) / std::max(1.0, std::abs(want)));
    }
    tangent += tangency_locus(LCMap(H, H), {-3, 3}, {-3, 3}, 61).points.size();
  }
  const TangencyReport at0 = tangency_locus(crop(h, 0.0), {-3, 3}, {-3, 3}, 61);
  bool on_axes = !at0.points.empty();
  for (const PointChar& p : at0.points) on_axes = on_axes && (p.X == 0 || p.Y == 0);
  return outcome(dev <= 1e-12 && tangent == 0 && on_axes,
                 "closed form " + sci(dev) + ", tangent points " + std::to_string(tangent) + ", c=0 locus " +
                     std::to_string(at0.points.size()) + (on_axes ? " on axes" : " off axes"));
}

Outcome symmetry_tables() {
  int ok = 0, total = 0;
  std::string first_bad;
  for (const FigureCase& c : figure_cases()) {
    ++total;
    const Classification cl = classify(LCMap(parse_spec(c.h), parse_spec(c.k)));
    bool good;
    if (c.table == 0) {
      good = cl.table_hom.S1 == Subgroup::I && !cl.row;
    } else {
      good = cl.row && cl.row->table == c.table && cl.row->row == c.row && cl.row->S1 == cl.table_hom.S1 &&
             cl.row->S2 == cl.table_hom.S2 && cl.row->images == cl.table_hom.generator_images();
    }
    ok += good;
    if (!good && first_bad.empty()) first_bad = std::string(" first mismatch ") + c.label;
  }
  return outcome(ok == total, std::to_string(ok) + "/" + std::to_string(total) + " figure inputs" + first_bad);
}

Outcome cauchy_riemann() {
  Rng rng(1011);
  int passed = 0;
  for (int i = 0; i < 10; ++i) {
    auto part = [&] {
      return polynomial({uniform(rng, -1, 1), uniform(rng, 0.5, 2), uniform(rng, -0.3, 0.3), uniform(rng, 0, 0.2)});
    };
    passed += verify_lorentz_cr(LCMap(part(), part()), Grid2D{}).pass;
  }
  const LCMap m(exp1(), power_odd(3));
  const PlaneMap bad = [&](PointXY p) {
    const PointChar c = to_characteristic(p);
    return from_characteristic({m.h()(c.X), m.k()(c.Y) + 0.1 * c.X});
  };
  const bool caught = !verify_lorentz_cr(bad, Grid2D{}).pass;
  return outcome(passed == 10 && caught,
                 std::to_string(passed) + "/10 smooth pass, perturbation " + (caught ? "rejected" : "accepted"));
}

Outcome klein_gordon() {
  const LCMap m = klein_gordon_flatten(exponential(), parse_spec("poly:1,0,1"), {-2, 2});
  double worst = 0;
  for (double t : linspace(-2, 2, 81))
    worst = std::max({worst, std::abs(m.h()(t) - std::expm1(t)), std::abs(m.k()(t) - (t + t * t * t / 3))});
  return outcome(worst <= 1e-8, "max dev " + sci(worst));
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Outcome render_determinism(const std::string& lcmap) {
  if (lcmap.empty()) return outcome(false, "no lcmap path given");
  const auto dir = std::filesystem::temp_directory_path() / ("lc_accept_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  std::string csv[2];
  for (int run = 0; run < 2; ++run) {
    const auto base = dir / ("run" + std::to_string(run));
    const std::string cmd = "\"" + lcmap + "\" render --h ridge:0.5 --k ridge:0.5 --window=-3,3,-3,3" +
                            " --levels-u=-1,-0.5,0,0.5,1 --levels-v=-1,-0.5,0,0.5,1 --highlight v:0 --out \"" +
                            base.string() + ".svg\" --csv \"" + base.string() + ".csv\"";
    if (std::system(cmd.c_str()) != 0) return outcome(false, "render run failed");
    csv[run] = slurp(base.string() + ".csv");
  }
  std::filesystem::remove_all(dir);
  return outcome(!csv[0].empty() && csv[0] == csv[1], std::to_string(csv[0].size()) + " bytes, identical");
}

}  // namespace

int main(int argc, char** argv) {
  const std::string lcmap = argc > 1 ? argv[1] : "";
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"ridge contours", ridge_contour},
      {"folded square map", folded_square},
      {"crossing rays", crossing_rays},
      {"gauge freedom", gauge},
      {"quadrilateral to square", quadrilaterals},
      {"rectangle rule", rectangle_rule},
      {"nondifferentiable crossing", example2},
      {"unfolding", unfolding},
      {"cropping", cropping},
      {"symmetry tables", symmetry_tables},
      {"Lorentz-CR check", cauchy_riemann},
      {"Klein-Gordon flattening", klein_gordon},
      {"render determinism", [&] { return render_determinism(lcmap); }},
  };
  int failures = 0;
  int index = 0;
  for (const auto& [label, run] : criteria) {
    ++index;
    Outcome o{false, ""};
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << index << " " << label << ": " << o.detail << "\n";
  }
  return failures == 0 ? 0 : 1;
}
