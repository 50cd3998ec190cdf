#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace lorentz;
using namespace lorentz::testing;

namespace {

RayFamily random_complete_rays(Rng& rng) {
  RayFamily r;
  for (int j = 0; j < 3; ++j) r.g[j] = random_ray(rng);
  return complete(r);
}

Quadrilateral random_complete_quad(Rng& rng) {
  Quadrilateral q;
  for (int j = 0; j < 3; ++j) q.g[j] = random_smooth_side(rng);
  return complete(q);
}

}  // namespace

TEST(Rectangle, CurveSolversAreConsistent) {
  Rng rng(51);
  const CurveFamily c = curves_from_rays(random_complete_rays(rng));
  for (const Curve& cv : c) {
    for (double s : linspace(0.05, 0.95, 10)) {
      const PointChar p = cv.at(s);
      EXPECT_NEAR(*cv.x_of_y(p.Y), p.X, 1e-10);
      EXPECT_NEAR(*cv.y_of_x(p.X), p.Y, 1e-10);
    }
  }
  EXPECT_FALSE(c[0].x_of_y(-1.0).has_value());
}

TEST(Rectangle, PassesForRealizableRayFamilies) {
  Rng rng(52);
  for (int i = 0; i < 10; ++i) {
    const RectangleReport rep = rectangle_rule_test(curves_from_rays(random_complete_rays(rng)), 200, 1000 + i);
    EXPECT_TRUE(rep.pass) << rep.max_residual;
    EXPECT_EQ(rep.trials, 200);
  }
}

TEST(Rectangle, PassesForRealizableQuadrilaterals) {
  Rng rng(53);
  for (int i = 0; i < 10; ++i) {
    const RectangleReport rep = rectangle_rule_test(curves_from_quad(random_complete_quad(rng)), 200, 2000 + i);
    EXPECT_TRUE(rep.pass) << rep.max_residual;
  }
}

TEST(Rectangle, PassesForScaledQuadrilateral) {
  Rng rng(54);
  Quadrilateral q = random_complete_quad(rng);
  q.X1 = 2;
  q.Y2 = 0.5;
  EXPECT_TRUE(rectangle_rule_test(curves_from_quad(q), 200, 7, 2.0).pass);
}

TEST(Rectangle, FailsForBumpPerturbedRays) {
  Rng rng(55);
  const MonotoneMap bump = parse_spec("pwl:0,0;0.5,0.5;1,1.2;2,2");
  for (int i = 0; i < 5; ++i) {
    RayFamily r = random_complete_rays(rng);
    r.g[3] = compose(bump, *r.g[3]);
    const RectangleReport rep = rectangle_rule_test(curves_from_rays(r), 200, 3000 + i);
    EXPECT_FALSE(rep.pass);
    EXPECT_GT(rep.max_residual, 1e-2);
  }
}

TEST(Rectangle, FailsForBumpPerturbedSides) {
  Rng rng(56);
  const MonotoneMap bump = pin_unit(parse_spec("pwl:0,0;0.5,0.65;1,1"));
  for (int i = 0; i < 5; ++i) {
    Quadrilateral q = random_complete_quad(rng);
    q.g[3] = compose(bump, *q.g[3]);
    const RectangleReport rep = rectangle_rule_test(curves_from_quad(q), 200, 4000 + i);
    EXPECT_FALSE(rep.pass);
    EXPECT_GT(rep.max_residual, 1e-2);
  }
}

TEST(Rectangle, SeedDeterminesTrials) {
  Rng rng(57);
  const CurveFamily c = curves_from_rays(random_complete_rays(rng));
  const RectangleReport a = rectangle_rule_test(c, 50, 99);
  const RectangleReport b = rectangle_rule_test(c, 50, 99);
  EXPECT_EQ(a.csv(), b.csv());
  EXPECT_EQ(a.csv().substr(0, 25), "trial,max_residual,pass\n0");
}

TEST(Rectangle, FourthVertexClosesRectangle) {
  Rng rng(58);
  const RectangleReport rep = rectangle_rule_test(curves_from_rays(random_complete_rays(rng)), 40, 5);
  for (const RectangleTrial& t : rep.records) {
    const auto& v = t.vertices;
    // Opposite sides are parallel to the characteristic axes.
    const bool x_first = t.start % 2 == 1;
    EXPECT_EQ(x_first ? v[0].X : v[0].Y, x_first ? v[1].X : v[1].Y);
    EXPECT_EQ(x_first ? v[1].Y : v[1].X, x_first ? v[2].Y : v[2].X);
    EXPECT_EQ(x_first ? v[2].X : v[2].Y, x_first ? v[3].X : v[3].Y);
    EXPECT_EQ(x_first ? v[3].Y : v[3].X, x_first ? v[0].Y : v[0].X);
  }
}

TEST(Bounce, RequiresUnitVertices) {
  Quadrilateral q;
  q.g = {std::nullopt, identity_map(), identity_map(), identity_map()};
  const auto top = signal_bounce_top(q, 11);
  EXPECT_LT(top_side_distance(identity_map(), top), 1e-15);
  q.X1 = 2;
  EXPECT_THROW(signal_bounce_top(q), Error);
}
