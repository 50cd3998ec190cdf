#include <gtest/gtest.h>

#include <functional>

#include "test_support.hpp"

using namespace lorentz;
using namespace lorentz::testing;

namespace {

LCMap from_specs(const char* h, const char* k) { return LCMap(parse_spec(h), parse_spec(k)); }

MonotoneMap random_odd(Rng& rng) { return odd_extend(random_ray(rng)); }
MonotoneMap random_even(Rng& rng) { return even_extend(random_ray(rng)); }
MonotoneMap random_generic(Rng& rng) { return assemble_parts(random_ray(rng), random_ray(rng)); }
MonotoneMap reflect(const MonotoneMap& f) { return compose(f, affine(-1, 0)); }

// Random (h, k) satisfying the condition of a table row.
LCMap random_for_row(Rng& rng, int table, int row) {
  if (table == 3) {
    const MonotoneMap f = row % 2 == 1 ? random_even(rng) : random_odd(rng);
    return LCMap(f, row <= 2 ? f : negate(f));
  }
  if (table == 4) {
    const MonotoneMap h = row <= 2 ? random_even(rng) : random_odd(rng);
    const MonotoneMap k = row % 2 == 1 ? random_even(rng) : random_odd(rng);
    return LCMap(h, k);
  }
  const MonotoneMap g = random_generic(rng);
  switch (row) {
    case 1: return LCMap(random_even(rng), g);
    case 2: return LCMap(random_odd(rng), g);
    case 3: return LCMap(g, random_even(rng));
    case 4: return LCMap(g, random_odd(rng));
    case 5: return LCMap(g, reflect(g));
    case 6: return LCMap(g, negate(reflect(g)));
    case 7: return LCMap(g, g);
    default: return LCMap(g, negate(g));
  }
}

}  // namespace

TEST(Symmetry, IdentityAlwaysMapsToIdentity) {
  Rng rng(61);
  const LCMap m(random_generic(rng), random_generic(rng));
  const SymmetryHom hom = full_symmetry_group(m);
  EXPECT_EQ(hom.S1, Subgroup::I);
  EXPECT_EQ(hom(D4::e), D4::e);
  EXPECT_EQ(classify(m).summary(), "no D4 symmetry");
}

TEST(Symmetry, VerifyPairDirectOracle) {
  // (s, s) holds exactly when h is odd.
  const LCMap odd_h(power_odd(3), exp1());
  EXPECT_LT(verify_pair(odd_h, D4::s, D4::s, symmetry_samples()), 1e-12);
  const LCMap not_odd(exp1(), exp1());
  EXPECT_GT(verify_pair(not_odd, D4::s, D4::s, symmetry_samples()), 1e-3);
}

TEST(Symmetry, FigureInputsReproduceTableRows) {
  for (const FigureCase& c : figure_cases()) {
    const Classification cl = classify(from_specs(c.h, c.k));
    if (c.table == 0) {
      EXPECT_EQ(cl.table_hom.S1, Subgroup::I) << c.label;
      EXPECT_FALSE(cl.row.has_value()) << c.label;
      continue;
    }
    ASSERT_TRUE(cl.row.has_value()) << c.label << " " << cl.table_hom.describe();
    EXPECT_EQ(cl.row->table, c.table) << c.label;
    EXPECT_EQ(cl.row->row, c.row) << c.label;
    EXPECT_EQ(cl.table_hom.S1, cl.row->S1) << c.label;
    EXPECT_EQ(cl.table_hom.S2, cl.row->S2) << c.label;
    EXPECT_EQ(cl.table_hom.generator_images(), cl.row->images) << c.label;
  }
}

TEST(Symmetry, ConditionFlagsForFigureInputs) {
  const ConditionProfile sq = detect_conditions(from_specs("sq", "sq"));
  EXPECT_TRUE(sq.h_even.holds && sq.k_even.holds && sq.h_eq_k.holds);
  EXPECT_FALSE(sq.h_odd.holds);
  const ConditionProfile d = detect_conditions(from_specs("odd(sq)", "id"));
  EXPECT_TRUE(d.h_odd.holds && d.k_odd.holds);
  EXPECT_FALSE(d.h_eq_k.holds);
  EXPECT_THROW(detect_conditions(LCMap(affine(0, 0), identity_map())), Error);
}

TEST(Symmetry, TableThreeRows) {
  EXPECT_EQ(classify(from_specs("sq", "sq")).summary(), "Table3:row1 D4->Ru (s,st)->(e,t)");
  EXPECT_EQ(classify(from_specs("odd(sq)", "odd(sq)")).summary(), "Table3:row2 D4->D4 identity");
  EXPECT_EQ(classify(from_specs("sq", "neg(sq)")).row->row, 3);
  EXPECT_EQ(classify(from_specs("pow:3", "neg(pow:3)")).row->row, 4);
}

TEST(Symmetry, EveryRowIsEquivalentToItsCondition) {
  Rng rng(62);
  for (const TableRow& row : table_rows()) {
    for (int i = 0; i < 20; ++i) {
      const LCMap m = random_for_row(rng, row.table, row.row);
      const SymmetryHom hom = full_symmetry_group(m);
      const auto got = match_row(hom);
      ASSERT_TRUE(got.has_value()) << row.table << ":" << row.row << " " << hom.describe();
      EXPECT_EQ(got->table, row.table);
      EXPECT_EQ(got->row, row.row) << row.condition;
    }
  }
}

TEST(Symmetry, DetectedGroupsAreHomomorphisms) {
  Rng rng(63);
  for (const TableRow& row : table_rows()) {
    const LCMap m = random_for_row(rng, row.table, row.row);
    const SymmetryHom hom = full_symmetry_group(m);
    const std::vector<D4> el = elements(hom.S1);
    for (D4 a : el)
      for (D4 b : el) EXPECT_EQ(hom(d4_compose(a, b)), d4_compose(hom(a), hom(b)));
    // alpha(g p) = Phi(g) alpha(p) on a finer grid than the detector used.
    for (D4 g : el) EXPECT_LT(verify_pair(m, g, hom(g), symmetry_samples(29, 2.3)), 1e-12);
  }
}

TEST(Symmetry, SwappedFormIsClassifiedThroughItsComponents) {
  const Classification c = classify(LCMap(parse_spec("odd(sq)"), parse_spec("odd(sq)"), true));
  ASSERT_TRUE(c.row.has_value());
  EXPECT_EQ(c.row->row, 2);
  EXPECT_EQ(c.hom.S1, Subgroup::D4);
}

TEST(Symmetry, UnfoldingPredictionsHold) {
  Rng rng(64);
  for (const TableRow& row : table_rows()) {
    const auto target = unfolded_row(row.table, row.row);
    if (!target) continue;
    for (int i = 0; i < 5; ++i) {
      const Classification c = classify(random_for_row(rng, row.table, row.row));
      ASSERT_TRUE(c.unfolding.has_value()) << c.unfolding_note;
      ASSERT_TRUE(c.unfolding->predicted.has_value());
      EXPECT_EQ(*c.unfolding->predicted, *target);
      const auto got = match_row(c.unfolding->detected);
      ASSERT_TRUE(got.has_value()) << row.table << ":" << row.row;
      EXPECT_EQ(std::make_pair(got->table, got->row), *target);
    }
  }
}

TEST(Symmetry, UnfoldingOfFigureInputs) {
  const Classification a = classify(from_specs("sq", "abs"));
  ASSERT_TRUE(a.unfolding.has_value());
  const auto row = match_row(a.unfolding->detected);
  ASSERT_TRUE(row.has_value());
  EXPECT_EQ(row->table, 4);
  EXPECT_EQ(row->row, 4);
  // cos is even but not monotone on the half line.
  const Classification c = classify(from_specs("cos", "poly:0,-0.5,0.5"));
  EXPECT_FALSE(c.unfolding.has_value());
  EXPECT_FALSE(c.unfolding_note.empty());
}
