#pragma once

// JSON text for ray families, quadrilaterals and maps; functions travel as specs.
//
//   {"kind": "rays",   "g1": "id", "g2": "affine:3,0", "g3": "id", "g4": null, "reach": 2}
//   {"kind": "square", "g1": ..., "g4": ..., "vertices": [X1, X2, Y1, Y2]}
//   {"h": "pow:2", "k": "id", "swapped": false}

#include <string>
#include <variant>

#include <nlohmann/json.hpp>

#include "constructions.hpp"
#include "spec_parser.hpp"

namespace lorentz {

using Json = nlohmann::json;

namespace detail {

template <class Family>
Json sides_to_json(const Family& f) {
  Json j;
  for (int i = 0; i < 4; ++i) {
    const std::string key = "g" + std::to_string(i + 1);
    j[key] = f.g[i] ? Json(f.g[i]->spec()) : Json(nullptr);
  }
  return j;
}

template <class Family>
void sides_from_json(const Json& j, Family& f) {
  for (int i = 0; i < 4; ++i) {
    const std::string key = "g" + std::to_string(i + 1);
    if (j.contains(key) && !j[key].is_null()) f.g[i] = parse_spec(j[key].get<std::string>());
  }
}

}  // namespace detail

inline Json to_json(const RayFamily& r, double reach = 2.0) {
  Json j = detail::sides_to_json(r);
  j["kind"] = "rays";
  j["reach"] = reach;
  return j;
}

inline Json to_json(const Quadrilateral& q) {
  Json j = detail::sides_to_json(q);
  j["kind"] = "square";
  j["vertices"] = {q.X1, q.X2, q.Y1, q.Y2};
  return j;
}

inline Json to_json(const LCMap& m) { return Json{{"h", m.h().spec()}, {"k", m.k().spec()}, {"swapped", m.swapped()}}; }

struct CurveSpec {
  std::variant<RayFamily, Quadrilateral> family;
  double reach = 2.0;
};

/// Parses either family kind; ParseError on malformed text or an unknown kind.
inline CurveSpec curves_from_json_text(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::parse, std::string("invalid JSON: ") + e.what());
  }
  try {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "rays") {
      RayFamily r;
      detail::sides_from_json(j, r);
      return {r, j.value("reach", 2.0)};
    }
    if (kind == "square") {
      Quadrilateral q;
      detail::sides_from_json(j, q);
      if (j.contains("vertices")) {
        const auto v = j["vertices"].get<std::vector<double>>();
        if (v.size() != 4) throw Error(ErrorKind::parse, "vertices needs four numbers");
        q.X1 = v[0];
        q.X2 = v[1];
        q.Y1 = v[2];
        q.Y2 = v[3];
      }
      return {q, 1.0};
    }
    throw Error(ErrorKind::parse, "unknown kind '" + kind + "'");
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::parse, std::string("malformed family: ") + e.what());
  }
}

inline LCMap lcmap_from_json(const Json& j) {
  try {
    return LCMap(parse_spec(j.at("h").get<std::string>()), parse_spec(j.at("k").get<std::string>()),
                 j.value("swapped", false));
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::parse, std::string("malformed map: ") + e.what());
  }
}

}  // namespace lorentz
