#include "lens/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <set>

#include "lens/error.hpp"

namespace lens::io {
namespace {

json pair_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw Error("expected a number or [re, im], got " + j.dump());
}

double parse_double(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw Error("not a number: '" + std::string(text) + "'");
  }
  return v;
}

long parse_long(std::string_view text) {
  long v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw Error("not an integer: '" + std::string(text) + "'");
  }
  return v;
}

void check_keys(const json& j, const std::set<std::string>& allowed, const char* what) {
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) throw Error(std::string(what) + ": unknown key '" + key + "'");
  }
}

ArcId arc_from_name(const std::string& name) {
  if (name == "C0") return ArcId::C0;
  if (name == "C1") return ArcId::C1;
  throw Error("unknown arc '" + name + "' (expected C0 or C1)");
}

CatalogTerm term_from_json(const json& j, const std::string& kind) {
  CatalogTerm t{kind, 1.0, false};
  const json* opts = &j;
  if (j.contains("payload")) {
    if (j["payload"].is_number() || j["payload"].is_array()) {
      t.scale = complex_from_json(j["payload"]);
      return t;
    }
    opts = &j["payload"];
  }
  if (opts->contains("scale")) t.scale = complex_from_json((*opts)["scale"]);
  if (opts->contains("normal")) t.normal_derivative = (*opts)["normal"].get<bool>();
  return t;
}

void add_boundary(BoundaryData& d, const json& j) {
  if (!j.is_object() || !j.contains("kind")) throw Error("data entry needs a \"kind\": " + j.dump());
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "zero") return;
  if (kind == "sum") {
    for (const auto& e : j.at("payload")) add_boundary(d, e);
    return;
  }
  if (kind == "samples") {
    for (const auto& [arc, rows] : j.at("payload").items()) {
      std::vector<std::pair<double, cplx>> s;
      for (const auto& r : rows) {
        if (!r.is_array() || (r.size() != 2 && r.size() != 3)) {
          throw Error("boundary sample must be [arclen, re] or [arclen, re, im]");
        }
        s.emplace_back(r[0].get<double>(), cplx(r[1].get<double>(), r.size() == 3 ? r[2].get<double>() : 0.0));
      }
      d.set_samples(arc_from_name(arc), std::move(s));
    }
    return;
  }
  d.add(term_from_json(j, kind));
}

void add_source(SourceTerm& f, const json& j) {
  if (!j.is_object() || !j.contains("kind")) throw Error("data entry needs a \"kind\": " + j.dump());
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "zero") return;
  if (kind == "sum") {
    for (const auto& e : j.at("payload")) add_source(f, e);
    return;
  }
  if (kind == "grid") {
    const json& p = j.at("payload");
    check_keys(p, {"x", "y", "nx", "ny", "values"}, "source grid");
    GridSamples g;
    g.x0 = p.at("x").at(0).get<double>();
    g.x1 = p.at("x").at(1).get<double>();
    g.y0 = p.at("y").at(0).get<double>();
    g.y1 = p.at("y").at(1).get<double>();
    g.nx = p.at("nx").get<int>();
    g.ny = p.at("ny").get<int>();
    for (const auto& v : p.at("values")) g.values.push_back(complex_from_json(v));
    f.set_grid(std::move(g));
    return;
  }
  f.add(term_from_json(j, kind));
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

cplx parse_complex(std::string_view text) {
  const auto comma = text.find(',');
  if (comma == std::string_view::npos) throw Error("expected re,im: '" + std::string(text) + "'");
  return {parse_double(text.substr(0, comma)), parse_double(text.substr(comma + 1))};
}

std::pair<long, long> parse_pi_fraction(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return {parse_long(text), 1};
  const long q = parse_long(text.substr(slash + 1));
  if (q <= 0) throw Error("alpha-pi denominator must be positive");
  return {parse_long(text.substr(0, slash)), q};
}

json to_json(const LensParams& params) {
  return {{"alpha", params.alpha()}, {"n", params.n()}, {"theta", params.theta()}};
}

LensParams params_from_json(const json& j) {
  if (!j.contains("n")) throw Error("missing \"n\"");
  const int n = j["n"].get<int>();
  if (j.contains("alpha_pi")) {
    const auto [p, q] = parse_pi_fraction(j["alpha_pi"].get<std::string>());
    return LensParams::from_pi_fraction(p, q, n);
  }
  if (j.contains("alpha")) return LensParams(j["alpha"].get<double>(), n);
  throw Error("missing \"alpha\" or \"alpha_pi\"");
}

json arc_to_json(const LensParams& params, ArcId arc) {
  const ArcShape s = arc_shape(params, arc);
  json j;
  j["arc"] = to_string(arc);
  j["endpoints"] = json::array({pair_json(s.from), pair_json(s.to)});
  j["t_range"] = json::array({s.t_min, s.t_max});
  const auto [l0, l1] = arc_lengths(params);
  j["length"] = arc == ArcId::C0 ? l0 : l1;
  if (s.is_segment) {
    j["kind"] = "segment";
  } else {
    j["kind"] = "arc";
    j["center"] = pair_json(s.center);
    j["radius"] = s.radius;
  }
  return j;
}

json to_json(const QuadratureSpec& s) {
  return {{"gauss_order", s.gauss_order},         {"boundary_panels", s.boundary_panels},
          {"corner_levels", s.corner_levels},     {"corner_grading", s.corner_grading},
          {"area_radial", s.area_radial},         {"area_angular", s.area_angular},
          {"area_panels", s.area_panels},         {"area_psi_panels", s.area_psi_panels},
          {"pole_refinement", s.pole_refinement}, {"strip_halfwidth", s.strip_halfwidth},
          {"epsilon_corner", s.epsilon_corner}};
}

QuadratureSpec spec_from_json(const json& j, QuadratureSpec s) {
  check_keys(j,
             {"gauss_order", "boundary_panels", "corner_levels", "corner_grading", "area_radial",
              "area_angular", "area_panels", "area_psi_panels", "pole_refinement", "strip_halfwidth",
              "epsilon_corner"},
             "quadrature");
  auto get = [&](const char* key, auto& field) {
    if (j.contains(key)) field = j[key].get<std::decay_t<decltype(field)>>();
  };
  get("gauss_order", s.gauss_order);
  get("boundary_panels", s.boundary_panels);
  get("corner_levels", s.corner_levels);
  get("corner_grading", s.corner_grading);
  get("area_radial", s.area_radial);
  get("area_angular", s.area_angular);
  get("area_panels", s.area_panels);
  get("area_psi_panels", s.area_psi_panels);
  get("pole_refinement", s.pole_refinement);
  get("strip_halfwidth", s.strip_halfwidth);
  get("epsilon_corner", s.epsilon_corner);
  s.validate();
  return s;
}

BoundaryData boundary_data_from_json(const json& j) {
  BoundaryData d;
  add_boundary(d, j);
  return d;
}

SourceTerm source_from_json(const json& j) {
  SourceTerm f;
  add_source(f, j);
  return f;
}

Problem problem_from_json(const json& j) {
  try {
    check_keys(j, {"alpha", "alpha_pi", "n", "gamma", "f", "points", "quadrature"}, "problem");
    Problem p{params_from_json(j), {}, {}, {}, {}};
    if (j.contains("quadrature")) p.spec = spec_from_json(j["quadrature"]);
    if (j.contains("gamma")) p.gamma = boundary_data_from_json(j["gamma"]);
    if (j.contains("f")) p.f = source_from_json(j["f"]);
    if (!j.contains("points")) throw Error("missing \"points\"");
    for (const auto& pt : j["points"]) p.points.push_back(complex_from_json(pt));
    return p;
  } catch (const json::exception& e) {
    throw Error(std::string("problem file: ") + e.what());
  }
}

Problem load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open problem file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error("problem file '" + path + "': " + e.what());
  }
  return problem_from_json(j);
}

json parquet_json(const LensParams& params, std::optional<cplx> sample) {
  json j;
  j["params"] = to_json(params);
  json arcs = json::array();
  for (long k = 0; k < 2L * params.n(); ++k) {
    const CircleMatrix m = arc_matrix(params, k);
    json a;
    a["k"] = k;
    a["matrix"] = {{"a", m.a()}, {"b", pair_json(m.b())}, {"c", m.c()}};
    a["is_line"] = m.is_line();
    if (!m.is_line()) {
      a["center"] = pair_json(m.center());
      a["radius"] = m.radius();
    }
    arcs.push_back(a);
  }
  j["arc_matrices"] = arcs;
  j["corners"] = json::array({pair_json(params.upper_corner()), pair_json(params.lower_corner())});
  j["boundary"] = json::array({arc_to_json(params, ArcId::C0), arc_to_json(params, ArcId::C1)});
  if (sample) {
    const ReflectionOrbit o = orbit(params, *sample);
    json pts = json::array();
    for (const auto& p : o.points) {
      const auto f = p.finite();
      pts.push_back(f ? pair_json(*f) : json("inf"));
    }
    j["orbit"] = {{"z", pair_json(*sample)}, {"points", pts}};
  }
  return j;
}

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out << ',';
    out << fields[i];
  }
  out << '\n';
}

}  // namespace lens::io
