#pragma once

// Standard (x,y) and characteristic (X,Y) = (x+y, -x+y) coordinates, and the
// dihedral group D4 acting on both.

#include <algorithm>
#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"

namespace lorentz {

struct PointXY {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const PointXY&) const = default;
};

struct PointChar {
  double X = 0.0;
  double Y = 0.0;
  bool operator==(const PointChar&) const = default;
};

inline PointChar to_characteristic(PointXY p) { return {p.x + p.y, -p.x + p.y}; }
inline PointXY from_characteristic(PointChar p) { return {0.5 * (p.X - p.Y), 0.5 * (p.X + p.Y)}; }

// Elements in the order e, st, (st)^2, (st)^3, s, t, tst, sts where s reflects
// across X = 0 and t across x = 0.
enum class D4 : std::uint8_t { e, st, st2, st3, s, t, tst, sts };

inline constexpr std::array<D4, 8> kD4All{D4::e, D4::st, D4::st2, D4::st3, D4::s, D4::t, D4::tst, D4::sts};

inline constexpr std::string_view name(D4 g) {
  constexpr std::array<std::string_view, 8> names{"e", "st", "st2", "st3", "s", "t", "tst", "sts"};
  return names[static_cast<std::size_t>(g)];
}

inline D4 parse_d4(std::string_view text) {
  for (D4 g : kD4All)
    if (name(g) == text) return g;
  throw Error(ErrorKind::parse, "unknown D4 element '" + std::string(text) + "'");
}

namespace detail {

// Signed permutation matrices {{a,b},{c,d}} acting on (X,Y).
using Mat2 = std::array<int, 4>;

inline constexpr std::array<Mat2, 8> kCharMatrices{{
    {1, 0, 0, 1},    // e
    {0, -1, 1, 0},   // st:  (-Y, X)
    {-1, 0, 0, -1},  // st2: (-X,-Y)
    {0, 1, -1, 0},   // st3: ( Y,-X)
    {-1, 0, 0, 1},   // s:   (-X, Y)
    {0, 1, 1, 0},    // t:   ( Y, X)
    {1, 0, 0, -1},   // tst: ( X,-Y)
    {0, -1, -1, 0},  // sts: (-Y,-X)
}};

inline constexpr std::array<Mat2, 8> kStdMatrices{{
    {1, 0, 0, 1},    // e
    {0, -1, 1, 0},   // st:  (-y, x)
    {-1, 0, 0, -1},  // st2: (-x,-y)
    {0, 1, -1, 0},   // st3: ( y,-x)
    {0, -1, -1, 0},  // s:   (-y,-x)
    {-1, 0, 0, 1},   // t:   (-x, y)
    {0, 1, 1, 0},    // tst: ( y, x)
    {1, 0, 0, -1},   // sts: ( x,-y)
}};

inline constexpr Mat2 mat_mul(const Mat2& a, const Mat2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
          a[2] * b[1] + a[3] * b[3]};
}

inline constexpr std::array<std::array<D4, 8>, 8> make_table() {
  std::array<std::array<D4, 8>, 8> table{};
  for (std::size_t i = 0; i < 8; ++i) {
    for (std::size_t j = 0; j < 8; ++j) {
      const Mat2 prod = mat_mul(kCharMatrices[i], kCharMatrices[j]);
      for (std::size_t k = 0; k < 8; ++k)
        if (kCharMatrices[k] == prod) table[i][j] = static_cast<D4>(k);
    }
  }
  return table;
}

inline constexpr auto kD4Table = make_table();

}  // namespace detail

/// g1 after g2.
inline constexpr D4 d4_compose(D4 g1, D4 g2) {
  return detail::kD4Table[static_cast<std::size_t>(g1)][static_cast<std::size_t>(g2)];
}

inline constexpr D4 d4_inverse(D4 g) {
  for (D4 h : kD4All)
    if (d4_compose(g, h) == D4::e) return h;
  return D4::e;
}

inline PointChar d4_apply(D4 g, PointChar p) {
  const auto& m = detail::kCharMatrices[static_cast<std::size_t>(g)];
  return {m[0] * p.X + m[1] * p.Y, m[2] * p.X + m[3] * p.Y};
}

inline PointXY d4_apply(D4 g, PointXY p) {
  const auto& m = detail::kStdMatrices[static_cast<std::size_t>(g)];
  return {m[0] * p.x + m[1] * p.y, m[2] * p.x + m[3] * p.y};
}

// Subgroups of D4, named for their action on the domain plane.
enum class Subgroup : std::uint8_t { D4, RXY, Rxy, T, RX, RY, Rx, Ry, Tpi, I };

inline constexpr std::array<Subgroup, 10> kSubgroupsAll{Subgroup::D4, Subgroup::RXY, Subgroup::Rxy, Subgroup::T,
                                                        Subgroup::RX, Subgroup::RY,  Subgroup::Rx,  Subgroup::Ry,
                                                        Subgroup::Tpi, Subgroup::I};

/// Generators, in the order the symmetry tables list their images.
inline std::vector<D4> generators(Subgroup s) {
  switch (s) {
    case Subgroup::D4: return {D4::s, D4::st};
    case Subgroup::RXY: return {D4::s, D4::tst};
    case Subgroup::Rxy: return {D4::t, D4::sts};
    case Subgroup::T: return {D4::st};
    case Subgroup::RX: return {D4::s};
    case Subgroup::RY: return {D4::tst};
    case Subgroup::Rx: return {D4::t};
    case Subgroup::Ry: return {D4::sts};
    case Subgroup::Tpi: return {D4::st2};
    case Subgroup::I: return {};
  }
  return {};
}

/// Closure of a generating set, in enum order.
inline std::vector<D4> generate(const std::vector<D4>& gens) {
  std::array<bool, 8> in{};
  in[0] = true;
  for (bool grew = true; grew;) {
    grew = false;
    for (D4 a : kD4All) {
      if (!in[static_cast<std::size_t>(a)]) continue;
      for (D4 b : gens) {
        const auto c = static_cast<std::size_t>(d4_compose(a, b));
        if (!in[c]) in[c] = grew = true;
      }
    }
  }
  std::vector<D4> out;
  for (D4 g : kD4All)
    if (in[static_cast<std::size_t>(g)]) out.push_back(g);
  return out;
}

inline std::vector<D4> elements(Subgroup s) { return generate(generators(s)); }

/// Identifies a subgroup from its element set; throws if the set is not one.
inline Subgroup identify_subgroup(std::vector<D4> elems) {
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  for (Subgroup s : kSubgroupsAll)
    if (elements(s) == elems) return s;
  throw Error(ErrorKind::domain, "element set is not a subgroup of D4");
}

/// Table name; the codomain variant uses U,V,u,v and I for the trivial group.
inline std::string_view subgroup_name(Subgroup s, bool codomain = false) {
  switch (s) {
    case Subgroup::D4: return "D4";
    case Subgroup::RXY: return codomain ? "RUV" : "RXY";
    case Subgroup::Rxy: return codomain ? "Ruv" : "Rxy";
    case Subgroup::T: return "T";
    case Subgroup::RX: return codomain ? "RU" : "RX";
    case Subgroup::RY: return codomain ? "RV" : "RY";
    case Subgroup::Rx: return codomain ? "Ru" : "Rx";
    case Subgroup::Ry: return codomain ? "Rv" : "Ry";
    case Subgroup::Tpi: return "Tpi";
    case Subgroup::I: return codomain ? "I" : "e";
  }
  return "?";
}

}  // namespace lorentz
