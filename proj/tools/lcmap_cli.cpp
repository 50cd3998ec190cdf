// lcmap: command-line front end for the lorentz library.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lorentz/lorentz.hpp"

using namespace lorentz;

namespace {

std::vector<double> parse_numbers(const std::string& text, std::size_t expected = 0) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    char* end = nullptr;
    const double v = std::strtod(item.c_str(), &end);
    if (item.empty() || *end != '\0') throw Error(ErrorKind::parse, "bad number '" + item + "' in '" + text + "'");
    out.push_back(v);
  }
  if (expected && out.size() != expected)
    throw Error(ErrorKind::parse, "expected " + std::to_string(expected) + " numbers in '" + text + "'");
  return out;
}

MonotoneMap monotone_spec(const std::string& text, const std::string& flag) {
  MonotoneMap f = parse_spec(text);
  if (!f.is_monotone()) throw Error(ErrorKind::parse, "--" + flag + " '" + text + "' is not a monotone spec");
  return f;
}

std::string read_file(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::domain, "cannot open " + path);
  return {std::istreambuf_iterator<char>(in), {}};
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::domain, "cannot write " + path);
  out << text;
}

Window parse_window(const std::string& text) {
  const auto v = parse_numbers(text, 4);
  return {{v[0], v[1]}, {v[2], v[3]}};
}

std::uint64_t default_seed() {
  if (const char* s = std::getenv("LC_SEED")) return std::strtoull(s, nullptr, 10);
  return 0;
}

void print_map(const LCMap& m, bool json) {
  if (json) {
    std::cout << to_json(m).dump() << "\n";
    return;
  }
  std::cout << "h = " << m.h().spec() << "\n"
            << "k = " << m.k().spec() << "\n";
  if (m.swapped()) std::cout << "swapped = true\n";
}

void print_cr(const LCMap& m, const Window& w) {
  const CRReport cr = verify_lorentz_cr(m, Grid2D{w.x, w.y, 21});
  std::cout << "lorentz_cr: " << (cr.pass ? "pass" : "fail") << " (max residual " << format_real(cr.max_cr_residual)
            << ", " << cr.failures << "/" << cr.points << " points failing)\n";
}

struct MapFlags {
  std::string h = "id", k = "id", map_file;
  bool swapped = false;

  void add(CLI::App* app) {
    app->add_option("--h", h, "spec of h");
    app->add_option("--k", k, "spec of k");
    app->add_flag("--swapped", swapped, "use (U,V) = (k(Y), h(X))");
    app->add_option("--map", map_file, "read {h,k,swapped} JSON from a file or '-'");
  }
  LCMap get() const {
    if (!map_file.empty()) return lcmap_from_json(Json::parse(read_file(map_file)));
    return LCMap(parse_spec(h), parse_spec(k), swapped);
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lorentz-conformal maps of the plane: construction, verification and rendering"};
  app.set_help_flag("--help", "print this help message and exit");
  app.require_subcommand(1);
  app.fallthrough();
  bool json = false;
  app.add_flag("--json", json, "print maps as JSON");

  // eval
  auto* eval = app.add_subcommand("eval", "evaluate a map at a point");
  MapFlags eval_map;
  eval_map.add(eval);
  std::string point;
  eval->add_option("--point", point, "x,y")->required();
  eval->callback([&] {
    const auto p = parse_numbers(point, 2);
    const PointXY q = eval_map.get()({p[0], p[1]});
    std::cout << "u=" << format_real(q.x) << " v=" << format_real(q.y) << "\n";
  });

  // contour
  auto* cont = app.add_subcommand("contour", "sample one contour as CSV");
  MapFlags cont_map;
  cont_map.add(cont);
  std::string family = "u", window = "-2,2,-2,2", out_path;
  double level = 0;
  int res = 401;
  cont->add_option("--family", family)->check(CLI::IsMember({"u", "v"}));
  cont->add_option("--level", level);
  cont->add_option("--window", window, "x0,x1,y0,y1");
  cont->add_option("--res", res);
  cont->add_option("--out", out_path);
  cont->callback([&] {
    const LCMap m = cont_map.get();
    const RenderedContour rc =
        render_level(m, family == "u" ? Family::u : Family::v, level, parse_window(window), res);
    std::string csv = contour_csv_header();
    for (const auto& line : rc.polylines)
      for (const PointChar& p : line) append_csv_row(csv, rc.family, rc.level, p);
    write_output(out_path, csv);
  });

  // realize-crossing
  auto* rc = app.add_subcommand("realize-crossing", "map with prescribed u=0 and v=0 rays");
  std::array<std::string, 4> rays;
  std::string p_spec = "id";
  for (int j = 0; j < 4; ++j) rc->add_option("--g" + std::to_string(j + 1), rays[j]);
  rc->add_option("--p", p_spec);
  rc->callback([&] {
    RayFamily fam;
    for (int j = 0; j < 4; ++j)
      if (!rays[j].empty()) fam.g[j] = monotone_spec(rays[j], "g" + std::to_string(j + 1));
    if (const int miss = fam.missing()) {
      fam.g[miss - 1] = fourth_ray(fam);
      if (!json) std::cout << "g" << miss << " = " << fam.g[miss - 1]->spec() << "\n";
    }
    const LCMap m = realize_crossing(fam, monotone_spec(p_spec, "p"));
    print_map(m, json);
    if (json) return;
    std::cout << "cyclic_residual = " << format_real(cyclic_residual(fam)) << "\n";
    const RectangleReport rr = rectangle_rule_test(curves_from_rays(fam), 200, default_seed(), 2.0);
    std::cout << "rectangle_rule: " << (rr.pass ? "pass" : "fail") << " (max residual "
              << format_real(rr.max_residual) << ")\n";
    print_cr(m, {{-1.0, 1.0}, {-1.0, 1.0}});
  });

  // realize-square
  auto* rs = app.add_subcommand("realize-square", "map a quadrilateral onto the square");
  std::array<std::string, 4> sides;
  std::string sq_p = "id", vertices = "1,1,1,1";
  for (int j = 0; j < 4; ++j) rs->add_option("--g" + std::to_string(j + 1), sides[j]);
  rs->add_option("--p", sq_p);
  rs->add_option("--vertices", vertices, "X1,X2,Y1,Y2");
  rs->callback([&] {
    Quadrilateral q;
    for (int j = 0; j < 4; ++j)
      if (!sides[j].empty()) q.g[j] = monotone_spec(sides[j], "g" + std::to_string(j + 1));
    const auto v = parse_numbers(vertices, 4);
    q.X1 = v[0];
    q.X2 = v[1];
    q.Y1 = v[2];
    q.Y2 = v[3];
    if (const int miss = q.missing()) {
      q.g[miss - 1] = fourth_side_square(q);
      if (!json) std::cout << "g" << miss << " = " << q.g[miss - 1]->spec() << "\n";
    }
    const LCMap m = realize_square(q, monotone_spec(sq_p, "p"));
    print_map(m, json);
    if (json) return;
    std::cout << "twisted_cyclic_residual = " << format_real(twisted_cyclic_residual(complete(q))) << "\n";
    const RectangleReport rr = rectangle_rule_test(curves_from_quad(q), 200, default_seed());
    std::cout << "rectangle_rule: " << (rr.pass ? "pass" : "fail") << " (max residual "
              << format_real(rr.max_residual) << ")\n";
  });

  // flat-top and lr-sym
  std::string ft_g = "id", ft_p = "id";
  auto* ft = app.add_subcommand("flat-top", "quadrilateral with flat top and bottom");
  ft->add_option("--g", ft_g);
  ft->add_option("--p", ft_p);
  std::string lr_g = "id", lr_p = "id";
  auto* lr = app.add_subcommand("lr-sym", "quadrilateral symmetric about the y-axis");
  lr->add_option("--g", lr_g);
  lr->add_option("--p", lr_p);
  auto report_quad = [&](const std::pair<Quadrilateral, LCMap>& qm) {
    if (!json)
      for (int j = 0; j < 4; ++j) std::cout << "g" << j + 1 << " = " << qm.first.g[j]->spec() << "\n";
    print_map(qm.second, json);
  };
  ft->callback([&] { report_quad(flat_top_bottom(monotone_spec(ft_g, "g"), monotone_spec(ft_p, "p"))); });
  lr->callback([&] { report_quad(left_right_symmetric(monotone_spec(lr_g, "g"), monotone_spec(lr_p, "p"))); });

  // unfold and crop
  auto* un = app.add_subcommand("unfold", "odd extension of an even map");
  std::string un_p;
  bool negated = false;
  un->add_option("--p", un_p)->required();
  un->add_flag("--negated", negated, "extend the restriction to (-inf,0] instead");
  un->callback([&] { print_map(unfold(parse_spec(un_p), negated), json); });

  auto* cr = app.add_subcommand("crop", "remove strips around the characteristic axes");
  std::string cr_h;
  double cr_c = 0;
  cr->add_option("--h", cr_h)->required();
  cr->add_option("--c", cr_c)->required();
  cr->callback([&] { print_map(crop(monotone_spec(cr_h, "h"), cr_c), json); });

  // classify
  auto* cl = app.add_subcommand("classify", "D4 symmetry class of a map");
  MapFlags cl_map;
  cl_map.add(cl);
  bool verbose = false;
  cl->add_flag("--verbose", verbose, "print conditions and unfolding");
  cl->callback([&] {
    const LCMap m = cl_map.get();
    const Classification c = classify(m);
    std::cout << c.summary() << "\n";
    if (m.swapped())
      std::cout << "swapped form: " << subgroup_name(c.hom.S1) << "->" << subgroup_name(c.hom.S2, true) << ' '
                << c.hom.describe() << "\n";
    if (!verbose) return;
    std::cout << "conditions: " << c.conditions.describe() << "\n";
    if (c.unfolding) {
      const auto row = match_row(c.unfolding->detected);
      std::cout << "unfolding: h = " << c.unfolding->map.h().spec() << ", k = " << c.unfolding->map.k().spec()
                << " -> "
                << (row ? "Table" + std::to_string(row->table) + ":row" + std::to_string(row->row) : "no table row");
      if (c.unfolding->predicted)
        std::cout << " (predicted Table" << c.unfolding->predicted->first << ":row" << c.unfolding->predicted->second
                  << ")";
      std::cout << "\n";
    } else if (!c.unfolding_note.empty()) {
      std::cout << "unfolding: unavailable (" << c.unfolding_note << ")\n";
    }
  });

  // verify-rect
  auto* vr = app.add_subcommand("verify-rect", "rectangle-rule test on a family read from JSON");
  std::string curves_file, vr_csv;
  int trials = 200;
  std::uint64_t seed = default_seed();
  vr->add_option("--curves", curves_file)->required();
  vr->add_option("--trials", trials);
  vr->add_option("--seed", seed);
  vr->add_option("--csv", vr_csv, "write trial,max_residual,pass rows");
  int vr_status = 0;
  vr->callback([&] {
    const CurveSpec spec = curves_from_json_text(read_file(curves_file));
    RectangleReport rep;
    if (const auto* r = std::get_if<RayFamily>(&spec.family)) {
      rep = rectangle_rule_test(curves_from_rays(*r, spec.reach), trials, seed, spec.reach);
    } else {
      const auto& q = std::get<Quadrilateral>(spec.family);
      rep = rectangle_rule_test(curves_from_quad(q), trials, seed, std::max({q.X1, q.X2, q.Y1, q.Y2}));
    }
    std::cout << "rectangle_rule: " << (rep.pass ? "pass" : "fail") << "\n"
              << "trials = " << rep.trials << "\n"
              << "degenerate = " << rep.degenerate << "\n"
              << "max_residual = " << format_real(rep.max_residual) << "\n";
    if (!vr_csv.empty()) write_output(vr_csv, rep.csv());
    if (!rep.pass) vr_status = 2;
  });

  // render
  auto* rd = app.add_subcommand("render", "contour plot as SVG and CSV");
  MapFlags rd_map;
  rd_map.add(rd);
  std::string rd_window = "-2,2,-2,2", levels_u = "-1,-0.5,0,0.5,1", levels_v = "-1,-0.5,0,0.5,1", rd_out, rd_csv;
  std::vector<std::string> highlights;
  int rd_res = 401;
  rd->add_option("--window", rd_window, "x0,x1,y0,y1");
  rd->add_option("--levels-u", levels_u);
  rd->add_option("--levels-v", levels_v);
  rd->add_option("--highlight", highlights, "FAMILY:LEVEL (repeatable)");
  rd->add_option("--res", rd_res);
  rd->add_option("--seed", seed, "accepted for interface symmetry; rendering is deterministic");
  rd->add_option("--out", rd_out, "SVG file");
  rd->add_option("--csv", rd_csv, "CSV file (default: next to the SVG, or stdout)");
  rd->callback([&] {
    RenderOptions opt;
    opt.window = parse_window(rd_window);
    opt.levels_u = levels_u.empty() ? std::vector<double>{} : parse_numbers(levels_u);
    opt.levels_v = levels_v.empty() ? std::vector<double>{} : parse_numbers(levels_v);
    opt.resolution = rd_res;
    for (const std::string& h : highlights) {
      const auto colon = h.find(':');
      if (colon == std::string::npos || (h.substr(0, colon) != "u" && h.substr(0, colon) != "v"))
        throw Error(ErrorKind::parse, "highlight must look like u:0 or v:0.5, got '" + h + "'");
      opt.highlights.push_back({h[0] == 'u' ? Family::u : Family::v, parse_numbers(h.substr(colon + 1), 1)[0]});
    }
    const RenderResult r = render_contours(rd_map.get(), opt);
    std::string csv_path = rd_csv;
    if (csv_path.empty() && !rd_out.empty()) {
      csv_path = rd_out;
      const auto dot = csv_path.rfind('.');
      csv_path = (dot == std::string::npos ? csv_path : csv_path.substr(0, dot)) + ".csv";
    }
    if (!rd_out.empty()) write_output(rd_out, r.svg);
    write_output(csv_path, r.csv);
  });

  // kg-flatten
  auto* kg = app.add_subcommand("kg-flatten", "map with prescribed derivative densities");
  std::string nu, mu, domain = "-2,2";
  kg->add_option("--nu", nu)->required();
  kg->add_option("--mu", mu)->required();
  kg->add_option("--domain", domain, "a,b");
  kg->callback([&] {
    const auto d = parse_numbers(domain, 2);
    const LCMap m = klein_gordon_flatten(parse_spec(nu), parse_spec(mu), {d[0], d[1]});
    print_map(m, json);
    if (json) return;
    std::cout << "t,h,k\n";
    for (int i = 0; i <= 8; ++i) {
      const double t = d[0] + (d[1] - d[0]) * i / 8;
      std::cout << format_real(t) << ',' << format_real(m.h()(t)) << ',' << format_real(m.k()(t)) << "\n";
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return is_numeric_failure(e.kind()) ? 3 : 2;
  } catch (const Json::exception& e) {
    std::cerr << "ParseError: " << e.what() << "\n";
    return 2;
  }
  return vr_status;
}
