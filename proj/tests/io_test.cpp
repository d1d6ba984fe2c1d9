#include <doctest.h>

#include <cmath>
#include <sstream>

#include "lens/error.hpp"
#include "lens/io.hpp"
#include "support.hpp"

using namespace lens;
using namespace lens::testing;
using lens::io::json;

TEST_SUITE("io") {

TEST_CASE("numbers round trip through text") {
  Rng rng(61);
  for (int i = 0; i < 1000; ++i) {
    const double v = rng.uniform(-1, 1) * std::pow(10.0, rng.uniform(-300, 300));
    CHECK(std::stod(io::format_double(v)) == v);
  }
  CHECK(io::format_double(0.5) == "0.5");
  CHECK(io::format_double(1.0) == "1");
}

TEST_CASE("complex and fraction parsing") {
  CHECK(io::parse_complex("0.3,-1.5") == cplx(0.3, -1.5));
  CHECK_THROWS_AS(io::parse_complex("2"), Error);
  CHECK_THROWS_AS(io::parse_complex("a,b"), Error);
  CHECK_THROWS_AS(io::parse_complex("1,2,3"), Error);
  CHECK(io::parse_pi_fraction("2/3") == std::pair<long, long>(2, 3));
  CHECK_THROWS_AS(io::parse_pi_fraction("1/0"), Error);
  CHECK_THROWS_AS(io::parse_pi_fraction("x"), Error);
}

TEST_CASE("parameters from JSON") {
  CHECK(io::params_from_json(json{{"alpha_pi", "1/3"}, {"n", 3}}).chord());
  const LensParams p = io::params_from_json(json{{"alpha", 1.2}, {"n", 2}});
  CHECK(p.alpha() == 1.2);
  CHECK(io::params_from_json(io::to_json(p)) == p);
  CHECK_THROWS_AS(io::params_from_json(json{{"n", 2}}), Error);
  CHECK_THROWS_AS(io::params_from_json(json{{"alpha", 4.0}, {"n", 2}}), Error);
}

TEST_CASE("quadrature spec round trip") {
  QuadratureSpec s;
  s.gauss_order = 9;
  s.corner_grading = 0.3;
  s.pole_refinement = 2;
  const QuadratureSpec r = io::spec_from_json(io::to_json(s));
  CHECK(r.gauss_order == 9);
  CHECK(r.corner_grading == 0.3);
  CHECK(r.pole_refinement == 2);
  CHECK_THROWS_AS(io::spec_from_json(json{{"gauss_ordr", 3}}), Error);
}

TEST_CASE("boundary data and source terms") {
  const LensParams p(kPi / 2, 2);
  const BoundaryPoint b = boundary_param(p, ArcId::C1, 0.3);
  const BoundaryData g = io::boundary_data_from_json(json::parse(R"({"kind": "sum", "payload": [
      {"kind": "re_z2", "scale": 2}, {"kind": "const", "scale": [0, 1]}]})"));
  CHECK(std::abs(g(p, b) - cplx(2 * (b.point * b.point).real(), 1.0)) < 1e-14);
  const BoundaryData nd = io::boundary_data_from_json(json{{"kind", "abs2"}, {"normal", true}});
  CHECK(std::abs(nd(p, b) - 2.0) < 1e-14);  // d/dnu |z|^2 = 2 on the unit circle
  const BoundaryData s = io::boundary_data_from_json(json::parse(R"({"kind": "samples", "payload": {"C1": [[0, 1, 0], [2, 3, 0]]}})"));
  CHECK(s(p, boundary_param(p, ArcId::C1, -kPi / 2 + 1.0)).real() == doctest::Approx(2.0));
  CHECK(io::boundary_data_from_json(json{{"kind", "zero"}}).is_zero());
  CHECK_THROWS_AS(io::boundary_data_from_json(json{{"kind", "bessel"}}), Error);

  const SourceTerm f = io::source_from_json(json::parse(R"({"kind": "grid", "payload": {"x": [0, 1], "y": [0, 1], "nx": 2, "ny": 2, "values": [0, 1, 2, [3, 1]]}})"));
  CHECK(std::abs(f(cplx(1, 1)) - cplx(3, 1)) < 1e-15);
  CHECK(std::abs(f(cplx(0.5, 0)) - cplx(0.5, 0)) < 1e-15);
}

TEST_CASE("problem files") {
  const io::Problem pr = io::problem_from_json(json::parse(R"({"alpha_pi": "1/2", "n": 2,
      "gamma": {"kind": "abs2", "normal": true}, "f": {"kind": "const"},
      "points": [[0.5, 0.0], 0.25], "quadrature": {"gauss_order": 12}})"));
  CHECK(pr.params == LensParams(kPi / 2, 2));
  CHECK(pr.points.size() == 2);
  CHECK(pr.points[1] == cplx(0.25, 0));
  CHECK(pr.spec.gauss_order == 12);
  CHECK_THROWS_AS(io::problem_from_json(json{{"alpha", 1.0}, {"n", 2}}), Error);
  CHECK_THROWS_AS(io::problem_from_json(json{{"alpha", 1.0}, {"n", 2}, {"points", json::array()}, {"extra", 1}}), Error);
  CHECK_THROWS_AS(io::load_problem("/nonexistent/problem.json"), Error);
}

TEST_CASE("parquet output") {
  const LensParams p(kPi / 3, 3);
  const json j = io::parquet_json(p, cplx(0.8, 0.1));
  REQUIRE(j["arc_matrices"].size() == 6);
  for (const auto& a : j["arc_matrices"]) {
    const CircleMatrix m = arc_matrix(p, a["k"].get<long>());
    CHECK(a["matrix"]["a"].get<double>() == m.a());
    CHECK(a["matrix"]["c"].get<double>() == m.c());
  }
  REQUIRE(j["orbit"]["points"].size() == 6);
  const cplx z2(j["orbit"]["points"][2][0].get<double>(), j["orbit"]["points"][2][1].get<double>());
  CHECK(std::abs(z2 - orbit(p, cplx(0.8, 0.1)).at(2)) == 0.0);
  CHECK(j["corners"].size() == 2);
  CHECK(j["boundary"].size() == 2);
}

TEST_CASE("csv rows") {
  std::ostringstream out;
  io::write_csv_row(out, {"x", "y", ""});
  CHECK(out.str() == "x,y,\n");
}

}  // TEST_SUITE
