#include <doctest.h>

#include <cmath>

#include "lens/error.hpp"
#include "lens/kernels.hpp"
#include "lens/quadrature.hpp"
#include "support.hpp"

using namespace lens;
using namespace lens::testing;

TEST_SUITE("quadrature") {

TEST_CASE("Gauss-Legendre rules") {
  for (int m : {1, 2, 5, 16, 40}) {
    const GaussRule& g = gauss_legendre(m);
    REQUIRE(g.x.size() == std::size_t(m));
    for (int deg = 0; deg < 2 * m; ++deg) {
      double s = 0;
      for (int i = 0; i < m; ++i) s += g.w[i] * std::pow(g.x[i], deg);
      const double want = deg % 2 ? 0.0 : 2.0 / (deg + 1);
      CHECK(std::abs(s - want) < 1e-13);
    }
    for (int i = 0; i < m; ++i) CHECK(g.x[i] == doctest::Approx(-g.x[m - 1 - i]).epsilon(1e-15));
  }
  CHECK(&gauss_legendre(16) == &gauss_legendre(16));
}

TEST_CASE("spec validation") {
  QuadratureSpec s;
  CHECK_NOTHROW(s.validate());
  s.gauss_order = 0;
  CHECK_THROWS_AS(s.validate(), Error);
  s = {};
  s.corner_grading = 1.0;
  CHECK_THROWS_AS(s.validate(), Error);
  s = {};
  s.pole_refinement = 0;
  CHECK_THROWS_AS(s.validate(), Error);
}

TEST_CASE("compensated sum") {
  CompensatedSum<double> s;
  s.add(1.0);
  for (int i = 0; i < 1000; ++i) s.add(1e-16);
  s.add(-1.0);
  CHECK(s.value() == doctest::Approx(1e-13).epsilon(1e-10));
}

TEST_CASE("boundary length, sigma mass and the Poisson normalization") {
  const QuadratureSpec spec;
  for (const Case& c : standard_cases()) {
    const LensParams p = make(c);
    const auto [l0, l1] = arc_lengths(p);
    const double len = integrate_boundary(spec, p, [](const BoundaryPoint&) { return 1.0; });
    INFO("alpha=", c.alpha, " n=", c.n);
    CHECK(std::abs(len - (l0 + l1)) < 1e-10);
    const KernelField field(p);
    const double mass = integrate_boundary(spec, p, [&](const BoundaryPoint& b) { return field.sigma(b); });
    CHECK(std::abs(mass + 4 * kPi) < 1e-10);
    const cplx z0 = interior_probe(p);
    const double pn = integrate_boundary(spec, p, [&](const BoundaryPoint& b) { return field.poisson(z0, b); }, z0);
    CHECK(std::abs(pn - 2 * kPi) < 1e-6);
  }
  const double len = integrate_boundary(QuadratureSpec{}, LensParams(kPi / 2, 2), [](const BoundaryPoint&) { return 1.0; });
  CHECK(std::abs(len - (2 + kPi)) < 1e-10);
}

TEST_CASE("boundary nodes avoid the corners") {
  const QuadratureSpec spec;
  for (const Case& c : standard_cases()) {
    const LensParams p = make(c);
    for (const ArcNodes& a : make_boundary_rule(spec, p).arcs) {
      for (std::size_t j = 0; j < a.size(); ++j) {
        const cplx z(a.re[j], a.im[j]);
        CHECK(std::min(std::abs(z - p.upper_corner()), std::abs(z - p.lower_corner())) > spec.epsilon_corner);
        CHECK(a.w[j] > 0);
      }
    }
  }
}

TEST_CASE("domain area against the segment formula and a polygon") {
  const QuadratureSpec spec;
  for (const Case& c : standard_cases()) {
    const LensParams p = make(c);
    const double area = integrate_area(spec, p, [](cplx) { return 1.0; });
    const double want = segment_area(p);
    INFO("alpha=", c.alpha, " n=", c.n);
    CHECK(std::abs(area - want) < 1e-8);
    if (std::abs(p.alpha() - p.theta()) > 1e-6) CHECK(std::abs(polygon_area(p) - want) < 1e-9);
  }
  CHECK(std::abs(integrate_area(spec, LensParams(kPi / 2, 2), [](cplx) { return 1.0; }) - kPi / 2) < 1e-8);
}

TEST_CASE("area integral of a smooth function equals its boundary flux") {
  // div(e^x cos y, 0) = e^x cos y, so the area integral is the flux of (e^x cos y, 0)
  const QuadratureSpec spec;
  for (const Case& c : standard_cases()) {
    const LensParams p = make(c);
    const double area = integrate_area(spec, p, [](cplx z) { return std::exp(z.real()) * std::cos(z.imag()); });
    const double flux = integrate_boundary(spec, p, [&](const BoundaryPoint& b) {
      return std::exp(b.point.real()) * std::cos(b.point.imag()) * outward_normal(p, b).real();
    });
    CHECK(std::abs(area - flux) < 1e-10);
  }
}

TEST_CASE("singular area integral of the disc Green function") {
  // w = 1 - |z|^2 solves w_{z conj z} = -1 with zero boundary values, so
  // (1/pi) ∬ g1(z, zeta) dA = 1 - |z|^2
  const QuadratureSpec spec;
  const LensParams p(kPi / 2, 1);
  const KernelField field(p);
  for (cplx z0 : {cplx(0.0), cplx(0.3, 0.2), cplx(-0.7, 0.1), cplx(0.1, -0.95)}) {
    const double v = integrate_area(spec, p, [&](cplx w) { return field.green(z0, w); }, z0);
    CHECK(std::abs(v / kPi - (1 - std::norm(z0))) < 1e-10);
  }
  CHECK_THROWS_AS(make_area_rule(spec, SectorMap(p), cplx(1.0, 0.0)), Error);
}

TEST_CASE("singular area integrals converge on the lens") {
  for (const Case& c : {Case{kPi / 2, 2}, Case{kPi / 3, 3}, Case{2.8, 3}}) {
    const LensParams p = make(c);
    const KernelField field(p);
    const cplx z0 = interior_probe(p) + cplx(0, 0.05);
    QuadratureSpec spec;
    const double v1 = integrate_area(spec, p, [&](cplx w) { return field.green(z0, w); }, z0);
    spec.area_panels = 2 * 40;
    spec.area_radial *= 2;
    spec.area_angular *= 2;
    spec.gauss_order = 24;
    const double v2 = integrate_area(spec, p, [&](cplx w) { return field.green(z0, w); }, z0);
    CHECK(std::abs(v1 - v2) < 1e-8);
  }
}

TEST_CASE("doubling the Gauss order gains accuracy on smooth integrands") {
  const LensParams p(kPi / 3, 3);
  const auto f = [](const BoundaryPoint& b) { return std::exp(b.point.real()) * std::cos(3 * b.point.imag()); };
  QuadratureSpec lo, ref;
  lo.gauss_order = 5;
  lo.boundary_panels = 1;
  lo.corner_levels = 0;
  ref.gauss_order = 32;
  const double exact = integrate_boundary(ref, p, f);
  QuadratureSpec hi = lo;
  hi.gauss_order = 10;
  const double e_lo = std::abs(integrate_boundary(lo, p, f) - exact);
  const double e_hi = std::abs(integrate_boundary(hi, p, f) - exact);
  INFO("errors ", e_lo, " ", e_hi);
  CHECK(e_lo > 1e-9);  // still far from rounding, so the gain is measurable
  CHECK(e_hi * 1e4 <= e_lo);
}

TEST_CASE("convergence reports show high order on smooth integrands") {
  const LensParams p(2 * kPi / 3, 2);
  QuadratureSpec spec;
  spec.gauss_order = 3;
  spec.boundary_panels = 4;
  spec.corner_levels = 0;
  const auto rows = convergence_report_boundary(spec, p, [](const BoundaryPoint& b) { return cplx(std::exp(b.point.real())); }, 2);
  REQUIRE(rows.size() == 3);
  CHECK(std::isnan(rows[1].order));
  CHECK(rows[2].order >= 4);
  CHECK(rows[1].resolution == 2 * rows[0].resolution);

  QuadratureSpec aspec;
  aspec.gauss_order = 4;
  aspec.area_panels = 16;
  aspec.strip_halfwidth = 6;
  const auto arows = convergence_report_area(aspec, p, [](cplx z) { return cplx(std::exp(z.real()) * std::cos(z.imag())); }, 2);
  REQUIRE(arows.size() == 3);
  CHECK(arows[2].order >= 4);
}

}  // TEST_SUITE
