#pragma once

// D4 symmetries of Lorentz-conformal maps: detection of the pairs (g, g') with
// alpha o g = g' o alpha, the induced homomorphism, and the symmetry-class tables.

#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "constructions.hpp"

namespace lorentz {

inline constexpr double kSymmetryTol = 1e-9;

/// 17 x 17 grid in characteristic coordinates with irrational-looking offsets, so no
/// point sits on an axis or a diagonal.
inline std::vector<PointChar> symmetry_samples(int n = 17, double reach = 1.4) {
  std::vector<PointChar> pts;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      pts.push_back({-reach + 2 * reach * (i + 0.31) / n, -reach + 2 * reach * (j + 0.67) / n});
  return pts;
}

/// max |alpha(g p) - g' alpha(p)| relative to max(1, |alpha(p)|); infinite if alpha is undefined.
inline double verify_pair(const LCMap& m, D4 g, D4 gp, const std::vector<PointChar>& samples) {
  double worst = 0;
  for (const PointChar& p : samples) {
    try {
      const PointChar lhs = m.eval_char(d4_apply(g, p));
      const PointChar rhs = d4_apply(gp, m.eval_char(p));
      const double scale = std::max({1.0, std::abs(rhs.X), std::abs(rhs.Y)});
      worst = std::max({worst, std::abs(lhs.X - rhs.X) / scale, std::abs(lhs.Y - rhs.Y) / scale});
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::domain) throw;
      return kInf;
    }
  }
  return worst;
}

struct SymmetryHom {
  Subgroup S1 = Subgroup::I;
  Subgroup S2 = Subgroup::I;
  std::array<std::optional<D4>, 8> phi{};  // indexed by domain element

  D4 operator()(D4 g) const {
    const auto& v = phi[static_cast<std::size_t>(g)];
    if (!v) throw Error(ErrorKind::domain, std::string(name(g)) + " is not in the symmetry group");
    return *v;
  }
  std::vector<D4> generator_images() const {
    std::vector<D4> out;
    for (D4 g : generators(S1)) out.push_back((*this)(g));
    return out;
  }
  bool is_identity() const {
    for (D4 g : elements(S1))
      if ((*this)(g) != g) return false;
    return true;
  }
  /// "(s,st)->(e,t)" style description of the generator images.
  std::string describe() const {
    const auto gens = generators(S1);
    if (gens.empty()) return "()->()";
    auto tuple = [](const std::vector<D4>& v) {
      std::string s = "(";
      for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::string(name(v[i]));
      return s + ")";
    };
    return tuple(gens) + "->" + tuple(generator_images());
  }
};

/// Tests all 64 pairs and assembles Phi: S1 -> S2.
inline SymmetryHom full_symmetry_group(const LCMap& m, const std::vector<PointChar>& samples = symmetry_samples(),
                                       double tol = kSymmetryTol) {
  SymmetryHom hom;
  std::vector<D4> domain;
  for (D4 g : kD4All) {
    std::optional<D4> image;
    for (D4 gp : kD4All) {
      if (verify_pair(m, g, gp, samples) >= tol) continue;
      if (image)
        throw Error(ErrorKind::non_unique_image,
                    std::string(name(g)) + " maps to both " + std::string(name(*image)) + " and " +
                        std::string(name(gp)));
      image = gp;
    }
    if (image) {
      hom.phi[static_cast<std::size_t>(g)] = image;
      domain.push_back(g);
    }
  }
  hom.S1 = identify_subgroup(domain);
  std::vector<D4> image;
  for (D4 g : domain) image.push_back(*hom.phi[static_cast<std::size_t>(g)]);
  hom.S2 = identify_subgroup(image);
  for (D4 a : domain)
    for (D4 b : domain)
      if (hom(d4_compose(a, b)) != d4_compose(hom(a), hom(b)))
        throw Error(ErrorKind::non_unique_image, "detected correspondence is not a homomorphism");
  return hom;
}

// ---------------------------------------------------------------------------
// Conditions on (h, k)

struct ConditionFlag {
  bool holds = false;
  double residual = 0;
};

struct ConditionProfile {
  ConditionFlag h_even, h_odd, k_even, k_odd, h_eq_k, h_eq_neg_k, h_reflect_eq_k, h_reflect_eq_neg_k;

  std::string describe() const {
    const std::pair<const ConditionFlag*, const char*> all[] = {
        {&h_even, "h even"},   {&h_odd, "h odd"},     {&k_even, "k even"},
        {&k_odd, "k odd"},     {&h_eq_k, "h=k"},      {&h_eq_neg_k, "h=-k"},
        {&h_reflect_eq_k, "h(-t)=k(t)"}, {&h_reflect_eq_neg_k, "h(-t)=-k(t)"}};
    std::string s;
    for (const auto& [f, label] : all)
      if (f->holds) s += (s.empty() ? "" : ", ") + std::string(label);
    return s.empty() ? "none" : s;
  }
};

/// One-dimensional samples taken from the coordinates of the symmetry grid, both signs.
inline std::vector<double> condition_samples(int n = 17, double reach = 1.4) {
  std::vector<double> ts;
  for (int i = 0; i < n; ++i) {
    ts.push_back(-reach + 2 * reach * (i + 0.31) / n);
    ts.push_back(-reach + 2 * reach * (i + 0.67) / n);
  }
  return ts;
}

inline ConditionProfile detect_conditions(const LCMap& m, const std::vector<double>& ts = condition_samples(),
                                          double tol = kSymmetryTol) {
  const MonotoneMap& h = m.h();
  const MonotoneMap& k = m.k();
  auto flag = [&](auto lhs, auto rhs) {
    ConditionFlag f;
    for (double t : ts) {
      try {
        const double a = lhs(t);
        const double b = rhs(t);
        f.residual = std::max(f.residual, std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)}));
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::domain) throw;
        f.residual = kInf;
      }
    }
    f.holds = f.residual < tol;
    return f;
  };
  ConditionProfile c;
  c.h_even = flag([&](double t) { return h(-t); }, [&](double t) { return h(t); });
  c.h_odd = flag([&](double t) { return h(-t); }, [&](double t) { return -h(t); });
  c.k_even = flag([&](double t) { return k(-t); }, [&](double t) { return k(t); });
  c.k_odd = flag([&](double t) { return k(-t); }, [&](double t) { return -k(t); });
  c.h_eq_k = flag([&](double t) { return h(t); }, [&](double t) { return k(t); });
  c.h_eq_neg_k = flag([&](double t) { return h(t); }, [&](double t) { return -k(t); });
  c.h_reflect_eq_k = flag([&](double t) { return h(-t); }, [&](double t) { return k(t); });
  c.h_reflect_eq_neg_k = flag([&](double t) { return h(-t); }, [&](double t) { return -k(t); });
  if ((c.h_even.holds && c.h_odd.holds) || (c.k_even.holds && c.k_odd.holds) ||
      (c.h_eq_k.holds && c.h_eq_neg_k.holds) || (c.h_reflect_eq_k.holds && c.h_reflect_eq_neg_k.holds))
    throw Error(ErrorKind::constant_function, "conditions force a constant component");
  return c;
}

// ---------------------------------------------------------------------------
// Table classification

struct TableRow {
  int table = 0;  // 3, 4 or 5; 0 when no row applies
  int row = 0;
  Subgroup S1 = Subgroup::I;
  Subgroup S2 = Subgroup::I;
  std::vector<D4> images;  // generator images
  const char* condition = "";
};

/// The rows of the three symmetry-class tables, in order.
inline const std::vector<TableRow>& table_rows() {
  static const std::vector<TableRow> rows = {
      {3, 1, Subgroup::D4, Subgroup::Rx, {D4::e, D4::t}, "h=k, h even"},
      {3, 2, Subgroup::D4, Subgroup::D4, {D4::s, D4::st}, "h=k, h odd"},
      {3, 3, Subgroup::D4, Subgroup::Ry, {D4::e, D4::sts}, "h=-k, h even"},
      {3, 4, Subgroup::D4, Subgroup::D4, {D4::s, D4::st3}, "h=-k, h odd"},
      {4, 1, Subgroup::RXY, Subgroup::I, {D4::e, D4::e}, "h, k even"},
      {4, 2, Subgroup::RXY, Subgroup::RY, {D4::e, D4::tst}, "h even, k odd"},
      {4, 3, Subgroup::RXY, Subgroup::RX, {D4::s, D4::e}, "h odd, k even"},
      {4, 4, Subgroup::RXY, Subgroup::RXY, {D4::s, D4::tst}, "h, k odd"},
      {5, 1, Subgroup::RX, Subgroup::I, {D4::e}, "h even"},
      {5, 2, Subgroup::RX, Subgroup::RX, {D4::s}, "h odd"},
      {5, 3, Subgroup::RY, Subgroup::I, {D4::e}, "k even"},
      {5, 4, Subgroup::RY, Subgroup::RY, {D4::tst}, "k odd"},
      {5, 5, Subgroup::Ry, Subgroup::Rx, {D4::t}, "h(-t)=k(t)"},
      {5, 6, Subgroup::Ry, Subgroup::Ry, {D4::sts}, "h(-t)=-k(t)"},
      {5, 7, Subgroup::Rx, Subgroup::Rx, {D4::t}, "h=k"},
      {5, 8, Subgroup::Rx, Subgroup::Ry, {D4::sts}, "h=-k"},
  };
  return rows;
}

/// The table row matching a detected homomorphism, if any.
inline std::optional<TableRow> match_row(const SymmetryHom& hom) {
  for (const TableRow& r : table_rows())
    if (r.S1 == hom.S1 && r.S2 == hom.S2 && r.images == hom.generator_images()) return r;
  return std::nullopt;
}

/// Row the unfolding of a row's even components lands in.
inline std::optional<std::pair<int, int>> unfolded_row(int table, int row) {
  static const std::map<std::pair<int, int>, std::pair<int, int>> next = {
      {{3, 1}, {3, 2}}, {{3, 3}, {3, 4}}, {{4, 1}, {4, 4}}, {{4, 2}, {4, 4}},
      {{4, 3}, {4, 4}}, {{5, 1}, {5, 2}}, {{5, 3}, {5, 4}}};
  const auto it = next.find({table, row});
  if (it == next.end()) return std::nullopt;
  return it->second;
}

struct Unfolding {
  LCMap map;
  std::optional<std::pair<int, int>> predicted;
  SymmetryHom detected;
};

struct Classification {
  SymmetryHom hom;              // of the map as given
  SymmetryHom table_hom;        // of the unswapped form (h(X), k(Y))
  ConditionProfile conditions;
  std::optional<TableRow> row;
  std::optional<Unfolding> unfolding;
  std::string unfolding_note;

  /// "Table3:row2 D4->D4 identity" or "no D4 symmetry".
  std::string summary() const {
    std::ostringstream os;
    if (row) {
      os << "Table" << row->table << ":row" << row->row << ' ' << subgroup_name(table_hom.S1) << "->"
         << subgroup_name(table_hom.S2, true) << ' '
         << (table_hom.S1 == table_hom.S2 && table_hom.is_identity() ? "identity" : table_hom.describe());
    } else if (table_hom.S1 == Subgroup::I) {
      os << "no D4 symmetry";
    } else {
      os << "S1=" << subgroup_name(table_hom.S1) << " S2=" << subgroup_name(table_hom.S2, true) << ' '
         << table_hom.describe() << " (no table row)";
    }
    return os.str();
  }
};

namespace detail {

// Odd extension of the half-line part of an even component, for either direction.
inline MonotoneMap unfold_component(const MonotoneMap& f) {
  const MonotoneMap plus = positive_part(f);
  if (!plus.is_monotone())
    throw Error(ErrorKind::not_bijective_on_half_line, f.spec() + " is not monotone on [0,inf)");
  if (plus.is_increasing()) return odd_extend(plus);
  return negate(odd_extend(negate(plus)));
}

}  // namespace detail

/// Detects the symmetry homomorphism, names the table row and, when a component is
/// even, unfolds it and reports the class of the unfolded map.
inline Classification classify(const LCMap& m) {
  Classification c;
  c.hom = full_symmetry_group(m);
  const LCMap plain(m.h(), m.k());
  c.table_hom = m.swapped() ? full_symmetry_group(plain) : c.hom;
  c.conditions = detect_conditions(plain);
  c.row = match_row(c.table_hom);
  const bool h_even = c.conditions.h_even.holds;
  const bool k_even = c.conditions.k_even.holds;
  if (!h_even && !k_even) return c;
  try {
    MonotoneMap h = h_even ? detail::unfold_component(m.h()) : m.h();
    MonotoneMap k = k_even ? detail::unfold_component(m.k()) : m.k();
    Unfolding u{LCMap(h, k, m.swapped()), std::nullopt, {}};
    if (c.row) u.predicted = unfolded_row(c.row->table, c.row->row);
    u.detected = full_symmetry_group(LCMap(h, k));
    c.unfolding = std::move(u);
  } catch (const Error& e) {
    c.unfolding_note = e.what();
  }
  return c;
}

}  // namespace lorentz
