#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace lorentz;
using namespace lorentz::testing;

namespace {

LCMap random_smooth_map(Rng& rng) {
  auto part = [&] {
    const double a = uniform(rng, 0.5, 2.0), b = uniform(rng, -0.3, 0.3), c = uniform(rng, 0.0, 0.2);
    return polynomial({uniform(rng, -1, 1), a, b, c});
  };
  return LCMap(part(), part(), uniform(rng, 0, 1) < 0.3);
}

}  // namespace

TEST(LCMap, SquareMapMatchesClosedForm) {
  const LCMap m(square(), square());
  for (double x : linspace(-2, 2, 21)) {
    for (double y : linspace(-2, 2, 21)) {
      const PointXY q = m({x, y});
      EXPECT_NEAR(q.x, 2 * x * y, 1e-12);
      EXPECT_NEAR(q.y, x * x + y * y, 1e-12);
    }
  }
}

TEST(LCMap, SwappedFormExchangesComponents) {
  const LCMap m(affine(2, 0), affine(3, 0), true);
  const PointChar q = m.eval_char({1.0, 1.0});
  EXPECT_EQ(q.X, 3.0);
  EXPECT_EQ(q.Y, 2.0);
  const PointChar back = m.invert_char(q);
  EXPECT_DOUBLE_EQ(back.X, 1.0);
  EXPECT_DOUBLE_EQ(back.Y, 1.0);
}

TEST(LCMap, CompositionMatchesPointwise) {
  Rng rng(7);
  for (int i = 0; i < 20; ++i) {
    for (bool sa : {false, true}) {
      for (bool sb : {false, true}) {
        const LCMap a(affine(uniform(rng, 0.5, 2), 0.1), exp1(), sa);
        const LCMap b(power_odd(uniform(rng, 0.5, 3)), ridge(0.3), sb);
        const LCMap ab = compose(a, b);
        const PointXY p{uniform(rng, -1, 1), uniform(rng, -1, 1)};
        const PointXY want = a(b(p));
        const PointXY got = ab(p);
        EXPECT_NEAR(got.x, want.x, 1e-12);
        EXPECT_NEAR(got.y, want.y, 1e-12);
      }
    }
  }
}

TEST(LCMap, RidgeZeroContourIsTheClosedForm) {
  const double a = 0.5;
  const LCMap m(ridge(a), ridge(a));
  const ContourResult r = contour(m, Family::v, 0.0, linspace(-4, 4, 401));
  ASSERT_EQ(r.branches.size(), 1u);
  for (const PointXY& p : r.branches[0].pts_xy) {
    const double ax = std::abs(p.x);
    EXPECT_NEAR(p.y, -a * ax / (1 + ax), 1e-9) << p.x;
  }
  const ContourResult u0 = contour(m, Family::u, 0.0, linspace(-3, 3, 61));
  for (const PointXY& p : u0.branches.at(0).pts_xy) EXPECT_NEAR(p.x, 0.0, 1e-12);
}

TEST(LCMap, FoldedContourHasOneBranchPerPiece) {
  const LCMap m(square(), square());
  // v = 1: X^2 + Y^2 = 2, two Y per |X| < sqrt 2.
  ContourOptions opt;
  opt.y_window = {-3, 3};
  const ContourResult r = contour(m, Family::v, 1.0, linspace(-1.2, 1.2, 41), opt);
  ASSERT_EQ(r.branches.size(), 2u);
  for (const auto& br : r.branches)
    for (const PointChar& c : br.pts_char) EXPECT_NEAR(c.X * c.X + c.Y * c.Y, 2.0, 1e-9);
}

TEST(LCMap, ContourResidualVanishesOnContours) {
  const LCMap m(exp1(), ridge(0.2), true);
  for (double X : linspace(-1, 1, 11)) {
    const PointChar p = contour_point(m, Family::u, 0.3, X);
    EXPECT_NEAR(contour_residual(m, Family::u, 0.3, p), 0.0, 1e-12);
  }
}

TEST(LCMap, LorentzCauchyRiemannHoldsForRandomSmoothMaps) {
  Rng rng(13);
  for (int i = 0; i < 10; ++i) {
    const LCMap m = random_smooth_map(rng);
    const CRReport rep = verify_lorentz_cr(m, Grid2D{{-1, 1}, {-1, 1}, 11});
    EXPECT_TRUE(rep.pass) << m.h() << " " << m.k();
  }
}

TEST(LCMap, CauchyRiemannFailsForPerturbation) {
  const LCMap m(exp1(), power_odd(3));
  const PlaneMap bad = [&](PointXY p) {
    const PointChar c = to_characteristic(p);
    return from_characteristic({m.h()(c.X), m.k()(c.Y) + 0.1 * c.X});
  };
  const CRReport rep = verify_lorentz_cr(bad, Grid2D{});
  EXPECT_FALSE(rep.pass);
  EXPECT_EQ(rep.failures, rep.points);
}

TEST(LCMap, JacobianFormsAndDegeneratePoints) {
  const JacobianData j = jacobian(LCMap(exp1(), exp1()), {0.3, 0.2});
  EXPECT_EQ(j.form, JacobianForm::symmetric);
  EXPECT_EQ(j.orientation, 1);
  const JacobianData js = jacobian(LCMap(exp1(), exp1(), true), {0.3, 0.2});
  EXPECT_EQ(js.form, JacobianForm::antisymmetric);
  try {
    (void)jacobian(LCMap(ridge(0.5), identity_map()), {0.0, 0.0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::degenerate_point);
  }
}

TEST(LCMap, AdmissibilityRejectsUnitSlopeRuns) {
  const std::vector<double> ts = linspace(0, 1, 11);
  EXPECT_TRUE(admissible_contour([](double t) { return 0.5 * t * t; }, ts).pass);
  EXPECT_FALSE(admissible_contour([](double t) { return 2 * t; }, ts).pass);
  EXPECT_FALSE(admissible_contour([](double t) { return t; }, ts).pass);
}

TEST(LCMap, CrossingSlopesForRidge) {
  const LCMap m(ridge(0.5), ridge(0.5));
  const CrossingReport r = crossing_tangent_check(m, {0.0, 0.0});
  EXPECT_TRUE(r.pass);
  EXPECT_NEAR(r.m_product, r.n_product, 1e-6);
}

TEST(LCMap, TangencyLocusOfCubicShift) {
  const MonotoneMap f = parse_spec("comp(affine:1,1,comp(pow:3,affine:1,-1))");
  const TangencyReport rep = tangency_locus(LCMap(f, f), {-2, 2}, {-2, 2}, 41);
  ASSERT_FALSE(rep.points.empty());
  for (const PointChar& p : rep.points) EXPECT_TRUE(std::abs(p.X - 1) < 1e-12 || std::abs(p.Y - 1) < 1e-12);
}

TEST(LCMap, KleinGordonFlatteningClosedForm) {
  const LCMap m = klein_gordon_flatten(exponential(), parse_spec("poly:1,0,1"), {-2, 2});
  for (double t : linspace(-2, 2, 41)) {
    EXPECT_NEAR(m.h()(t), std::expm1(t), 1e-8);
    EXPECT_NEAR(m.k()(t), t + t * t * t / 3, 1e-8);
  }
  EXPECT_THROW(klein_gordon_flatten(affine(1, 0), identity_map(), {-1, 1}), Error);
}
