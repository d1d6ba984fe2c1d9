#include "lens/validate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>

#include "lens/conformal.hpp"
#include "lens/error.hpp"
#include "lens/kernels.hpp"
#include "lens/quadrature.hpp"
#include "lens/solvers.hpp"

namespace lens {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

class Sampler {
 public:
  explicit Sampler(const LensParams& params) : params_(params), box_(bounding_box(params)) {}

  cplx interior(double margin) {
    std::uniform_real_distribution<double> ux(box_.x0, box_.x1), uy(box_.y0, box_.y1);
    for (;;) {
      const cplx z(ux(rng_), uy(rng_));
      if (classify(params_, z) == Region::Interior && distance_to_boundary(params_, z) > margin) {
        return z;
      }
    }
  }

  BoundaryPoint boundary(ArcId arc, double corner_margin) {
    const auto [lo, hi] = parameter_range(params_, arc);
    const double len = parameter_speed(params_, arc) * (hi - lo);
    const double m = std::min(0.25, corner_margin / len);
    std::uniform_real_distribution<double> u(m, 1.0 - m);
    return boundary_param(params_, arc, lo + (hi - lo) * u(rng_));
  }

  // Middle half of the arc, on the carrier to the last bit (see boundary_param_exact).
  BoundaryPoint boundary_mid(ArcId arc) {
    const auto [lo, hi] = parameter_range(params_, arc);
    return boundary_param_exact(params_, arc, lo + (hi - lo) * uniform(0.25, 0.75));
  }

  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng_); }

 private:
  const LensParams& params_;
  Box box_;
  std::mt19937_64 rng_{0x5eedULL};
};

std::vector<BoundaryPoint> arc_samples(const LensParams& params, ArcId arc, int count, double margin) {
  const auto [lo, hi] = parameter_range(params, arc);
  const double len = parameter_speed(params, arc) * (hi - lo);
  const double m = std::min(0.25, margin / len);
  std::vector<BoundaryPoint> out;
  for (int i = 0; i < count; ++i) {
    const double u = m + (1.0 - 2.0 * m) * (i + 0.5) / count;
    out.push_back(boundary_param(params, arc, lo + (hi - lo) * u));
  }
  return out;
}

// Area of D0 as the unit-circle segment cut by the chord through the corners,
// corrected by the segment between the chord and C0.
double segment_area(const LensParams& params) {
  const double a = params.alpha();
  const double unit = a - std::sin(a) * std::cos(a);
  if (params.chord()) return unit;
  const double diff = params.alpha_minus_theta();
  const double x = 2.0 * std::abs(diff);
  const double r = std::sin(a) / std::sin(std::abs(diff));
  // x - sin x without cancellation for small x
  const double x_minus_sin =
      x < 1e-2 ? x * x * x / 6.0 * (1.0 - x * x / 20.0 * (1.0 - x * x / 42.0)) : x - std::sin(x);
  const double seg = 0.5 * r * r * x_minus_sin;
  return diff > 0 ? unit - seg : unit + seg;
}

struct Suite {
  const LensParams& params;
  bool quick;
  ValidationReport report;

  int count(int full) const { return quick ? std::max(4, full / 5) : full; }

  void add(const std::string& module, const std::string& name, double value, double tol,
           const std::string& note = {}) {
    const bool pass = value <= tol;
    report.rows.push_back({module, name, value, tol, pass ? Verdict::Pass : Verdict::Fail, note});
  }
  void info(const std::string& module, const std::string& name, double value, const std::string& note) {
    report.rows.push_back({module, name, value, kNaN, Verdict::Info, note});
  }
  void guarded(const std::string& module, const std::string& name, const std::function<void()>& body) {
    try {
      body();
    } catch (const std::exception& e) {
      report.rows.push_back({module, name, kNaN, kNaN, Verdict::Fail, e.what()});
    }
  }
};

CircleMatrix random_circle(Sampler& s, bool line) {
  if (line) {
    const cplx b = std::polar(1.0, s.uniform(0.0, 2.0 * kPi));
    return {0.0, b, s.uniform(-2.0, 2.0)};
  }
  return CircleMatrix::from_center_radius({s.uniform(-2.0, 2.0), s.uniform(-2.0, 2.0)},
                                          s.uniform(0.1, 2.0));
}

cplx point_on(const CircleMatrix& m, double t) {
  if (m.is_line()) {
    const cplx b = m.b();
    return -m.c() * b / (2.0 * std::norm(b)) + cplx(0.0, 1.0) * b * t;
  }
  return m.center() + std::polar(m.radius(), t);
}

void circle_checks(Suite& s, Sampler& rng) {
  const std::string mod = "circle_geometry";
  const int n = s.count(100);
  double inv = 0, pointwise = 0, self = 0, invol = 0;
  for (int i = 0; i < n; ++i) {
    const CircleMatrix a = random_circle(rng, i % 7 == 0);
    const CircleMatrix b = random_circle(rng, i % 5 == 0);
    const HomogeneousPoint p(cplx(rng.uniform(-3, 3), rng.uniform(-3, 3)));
    if (!reflect_point(a, reflect_point(a, p)).same_as(p)) inv = std::max(inv, 1.0);
    const CircleMatrix ab = reflect_circle(a, b);
    for (int j = 0; j < 4; ++j) {
      const HomogeneousPoint img = reflect_point(a, HomogeneousPoint(point_on(b, rng.uniform(-3, 3))));
      pointwise = std::max(pointwise, std::abs(ab.canonical().form(img)));
    }
    if (!reflect_circle(a, a).equivalent(a)) self = 1.0;
    // A tiny image circle far from the origin cannot be stored accurately as
    // (a, b, c); the round trip is only meaningful for well-conditioned images.
    const bool conditioned = ab.is_line() || ab.radius() >= 0.01;
    if (conditioned && !reflect_circle(a, ab).equivalent(b)) invol = 1.0;
  }
  s.add(mod, "reflect_point is an involution (failures)", inv, 0.0);
  s.add(mod, "reflected points lie on reflect_circle", pointwise, kGeomEps);
  s.add(mod, "reflect_circle(A, A) = A (failures)", self, 0.0);
  s.add(mod, "reflect_circle is an involution (failures)", invol, 0.0);
}

void domain_checks(Suite& s, Sampler& rng) {
  const std::string mod = "lens_domain";
  const LensParams& p = s.params;
  const int n = p.n();
  double periodic = 0;
  for (long k = -2L * n; k < 4L * n; ++k) {
    const CircleMatrix a = arc_matrix(p, k), b = arc_matrix(p, k + 2L * n);
    periodic = std::max({periodic, std::abs(a.a() - b.a()), std::abs(a.b() - b.b()), std::abs(a.c() - b.c())});
  }
  s.add(mod, "arc_matrix(k + 2n) == arc_matrix(k)", periodic, 0.0);

  int mismatches = 0;
  for (int i = 0; i < s.count(100); ++i) {
    const cplx z = rng.interior(1e-6);
    const ReflectionOrbit o = orbit(p, z);
    const HomogeneousPoint z0(z), z1(1.0, std::conj(z));
    for (int k = 0; k < n; ++k) {
      const CircleMatrix m = arc_matrix(p, k + 1);
      if (!o.points[2 * k + 1].same_as(reflect_point(m, z0))) ++mismatches;
      if (!o.points[2 * k].same_as(reflect_point(m, z1))) ++mismatches;
    }
  }
  s.add(mod, "orbit agrees with matrix reflections (mismatches)", mismatches, 0.0);

  int c0_bad = 0, c1_bad = 0;
  for (const auto& bp : arc_samples(p, ArcId::C0, s.count(50), 1e-3)) {
    const ReflectionOrbit o = orbit(p, bp.point);
    for (int k = 0; k < n; ++k) {
      if (!o.points[2 * k + 1].same_as(o.points[(2 * k + 2) % (2 * n)], 1e-8)) ++c0_bad;
    }
  }
  for (const auto& bp : arc_samples(p, ArcId::C1, s.count(50), 1e-3)) {
    const ReflectionOrbit o = orbit(p, bp.point);
    for (int k = 0; k < n; ++k) {
      if (!o.points[2 * k].same_as(o.points[2 * k + 1], 1e-8)) ++c1_bad;
    }
  }
  s.add(mod, "orbit pairs coincide on C0 (mismatches)", c0_bad, 0.0);
  s.add(mod, "orbit pairs coincide on C1 (mismatches)", c1_bad, 0.0);

  double corner = 0;
  for (long k = 0; k < 2L * n; ++k) {
    const CircleMatrix m = arc_matrix(p, k).canonical();
    corner = std::max({corner, std::abs(m.form(HomogeneousPoint(p.upper_corner()))),
                       std::abs(m.form(HomogeneousPoint(p.lower_corner())))});
  }
  s.add(mod, "corners lie on every arc", corner, kGeomEps);

  const KernelField field(p);
  const auto [l0, l1] = arc_lengths(p);
  s.report.mass_identity = -(field.sigma(ArcId::C0) * l0 + field.sigma(ArcId::C1) * l1) / (4.0 * kPi);
  s.add(mod, "mass identity", std::abs(s.report.mass_identity - 1.0), 1e-12);
}

// Fourth-order central difference; at h = 1e-5 the two-point stencil's h^2
// term alone exceeds 1e-6 when an image pole is within ~0.03.
double fd_normal(const std::function<double(cplx)>& f, cplx at, cplx nu, double h) {
  return (8.0 * (f(at + h * nu) - f(at - h * nu)) - (f(at + 2.0 * h * nu) - f(at - 2.0 * h * nu))) /
         (12.0 * h);
}

double laplacian(const std::function<double(cplx)>& f, cplx z, double h) {
  return (f(z + h) + f(z - h) + f(z + cplx(0, h)) + f(z - cplx(0, h)) - 4.0 * f(z)) / (h * h);
}

// 5-point stencils at h and h/2 combined to cancel the h^2 truncation term,
// which is large when an image pole sits close to z.
double laplacian_richardson(const std::function<double(cplx)>& f, cplx z, double h) {
  return (4.0 * laplacian(f, z, 0.5 * h) - laplacian(f, z, h)) / 3.0;
}

void kernel_checks(Suite& s, Sampler& rng) {
  const std::string mod = "kernels";
  const LensParams& p = s.params;
  const KernelField field(p);
  const ReferenceKernels ref = field.reference();

  double sym = 0, nsym = 0, minpos = std::numeric_limits<double>::infinity();
  for (int i = 0; i < s.count(200); ++i) {
    const cplx z = rng.interior(1e-6), w = rng.interior(1e-6);
    sym = std::max(sym, std::abs(field.green(z, w) - field.green(w, z)));
    nsym = std::max(nsym, std::abs(field.neumann(z, w) - field.neumann(w, z)));
    minpos = std::min(minpos, field.green(z, w));
  }
  s.add(mod, "G1 symmetric", sym, 1e-12);
  s.add(mod, "N1 symmetric", nsym, 1e-12);
  s.add(mod, "G1 positive inside (negated minimum)", -minpos, 0.0);

  double vanish = 0, unimod = 0, pzero = 0;
  std::vector<BoundaryPoint> bps;
  for (ArcId arc : {ArcId::C0, ArcId::C1}) {
    for (const auto& bp : arc_samples(p, arc, s.count(100), 1e-6)) bps.push_back(bp);
  }
  for (const auto& bp : bps) {
    const cplx w = rng.interior(1e-6);
    vanish = std::max(vanish, std::abs(field.green(bp.point, w)));
    unimod = std::max(unimod, std::abs(std::abs(field.orbit_prefactor(bp.point)) - 1.0));
  }
  for (std::size_t i = 0; i + 1 < bps.size(); i += 2) {
    pzero = std::max(pzero, std::abs(field.poisson(bps[i].point, bps[i + 1])));
  }
  s.add(mod, "G1 vanishes on the boundary", vanish, 1e-8);
  s.add(mod, "orbit prefactor unimodular on the boundary", unimod, 1e-10);
  s.add(mod, "p(z, zeta) = 0 for boundary z != zeta", pzero, 1e-8);

  // Image poles lie outside D0 but close to points near the boundary, so keep a
  // margin scaled to the size of the lens.
  const double margin = std::min(0.05, 0.25 * distance_to_boundary(p, interior_probe(p)));
  double harm_g = 0, harm_n = 0;
  for (int i = 0; i < s.count(40); ++i) {
    const cplx w = rng.interior(margin);
    cplx z = rng.interior(margin);
    for (int tries = 0; tries < 50 && std::abs(z - w) <= 0.1; ++tries) z = rng.interior(margin);
    if (std::abs(z - w) > 0.1) {
      harm_g = std::max(harm_g, std::abs(laplacian_richardson([&](cplx x) { return field.green(x, w); }, z, 1e-3)));
    }
    harm_n = std::max(harm_n,
                      std::abs(laplacian_richardson([&](cplx x) { return field.neumann_regular(x, w); }, z, 1e-3)));
  }
  s.add(mod, "G1 harmonic in z (5-point Laplacian)", harm_g, 1e-3);
  s.add(mod, "N1 + log|z - zeta|^2 harmonic in z", harm_n, 1e-3);

  double pfd = 0;
  for (int i = 0; i < s.count(50); ++i) {
    const BoundaryPoint bp = rng.boundary(i % 2 ? ArcId::C1 : ArcId::C0, 1e-2);
    const cplx z = rng.interior(margin);
    const cplx nu = outward_normal(p, bp);
    const double fd = fd_normal([&](cplx x) { return field.green(z, x); }, bp.point, nu, 1e-5);
    pfd = std::max(pfd, std::abs(field.poisson(z, bp) + 0.5 * fd));
  }
  s.add(mod, "p = -1/2 dG1/dnu (finite differences)", pfd, 1e-6);

  double sfd = 0;
  for (int i = 0; i < s.count(50); ++i) {
    const BoundaryPoint bp = rng.boundary(i % 2 ? ArcId::C1 : ArcId::C0, 1e-2);
    const cplx w = rng.interior(margin);
    const cplx nu = outward_normal(p, bp);
    const double fd = fd_normal([&](cplx x) { return field.neumann(x, w); }, bp.point, nu, 1e-5);
    sfd = std::max(sfd, std::abs(fd - field.sigma(bp)));
  }
  s.add(mod, "dN1/dnu = sigma (finite differences)", sfd, 1e-5);

  // Approach zeta along the inward normal: the singular parts cancel.
  for (double d : {1e-4, 1e-6}) {
    double p_err = 0, n_err = 0;
    for (int i = 0; i < s.count(20); ++i) {
      const ArcId arc = i % 2 ? ArcId::C1 : ArcId::C0;
      const BoundaryPoint bp = rng.boundary_mid(arc);
      const cplx z = bp.point - d * outward_normal(p, bp);
      const cplx dz = field.neumann_dz(z, bp.point);
      if (arc == ArcId::C0) {
        const double r0 = ref.p0(z, bp.point);
        p_err = std::max(p_err, std::abs(field.poisson(z, bp) - r0));
        const cplx coeff = -(z * ref.s_minus + ref.sin_theta) / ref.sin_alpha;
        const double limit = p.n() * ref.s_minus / ref.sin_alpha;
        n_err = std::max(n_err, std::abs((coeff * dz).real() - r0 - limit));
      } else {
        const double r1 = ref.p1(z, bp.point);
        p_err = std::max(p_err, std::abs(field.poisson(z, bp) - r1));
        n_err = std::max(n_err, std::abs((z * dz).real() - r1 + p.n()));
      }
    }
    const double tol = d > 1e-5 ? 1e-2 : 1e-4;
    char label[64];
    std::snprintf(label, sizeof label, " (distance %.0e)", d);
    s.add(mod, std::string("p -> reference Poisson kernel") + label, p_err, tol);
    s.add(mod, std::string("dN1/dz limit on the boundary") + label, n_err, tol);
  }
}

void conformal_checks(Suite& s, Sampler& rng) {
  const std::string mod = "conformal_oracle";
  const LensParams& p = s.params;
  const KernelField field(p);
  const SectorMap map(p);
  double agree = 0, bdry = 0, minim = std::numeric_limits<double>::infinity();
  for (int i = 0; i < s.count(200); ++i) {
    const cplx z = rng.interior(1e-6), w = rng.interior(1e-6);
    agree = std::max(agree, std::abs(field.green(z, w) - oracle_green(map, z, w)));
    minim = std::min(minim, map.map_to_halfplane(z).imag());
  }
  for (ArcId arc : {ArcId::C0, ArcId::C1}) {
    for (const auto& bp : arc_samples(p, arc, s.count(50), 1e-3)) {
      const cplx phi = map.map_to_halfplane(bp.point);
      bdry = std::max(bdry, std::abs(phi.imag()) / std::max(1.0, std::abs(phi)));
    }
  }
  s.add(mod, "G1 = conformal-map Green function", agree, 1e-9);
  s.add(mod, "boundary maps to the real axis", bdry, 1e-9);
  s.add(mod, "interior maps to Im > 0 (negated minimum)", -minim, 0.0);
}

void quadrature_checks(Suite& s) {
  const std::string mod = "quadrature";
  const LensParams& p = s.params;
  const QuadratureSpec spec;
  const auto [l0, l1] = arc_lengths(p);
  const double len = integrate_boundary(spec, p, [](const BoundaryPoint&) { return 1.0; });
  s.add(mod, "boundary length = arc lengths", std::abs(len - l0 - l1), 1e-10);
  const double area = integrate_area(spec, p, [](cplx) { return 1.0; });
  s.add(mod, "area = circular-segment formula", std::abs(area - segment_area(p)), 1e-8);

  const KernelField field(p);
  const double sig = integrate_boundary(spec, p, [&](const BoundaryPoint& b) { return field.sigma(b); });
  s.add(mod, "∮ sigma ds = -4 pi", std::abs(sig + 4.0 * kPi), 1e-10);

  auto smooth = [](const BoundaryPoint& b) { return cplx(std::exp(b.point.real()) * (2.0 + std::sin(3.0 * b.point.imag()))); };
  QuadratureSpec lo;
  lo.boundary_panels = 2;
  lo.corner_levels = 0;
  lo.gauss_order = 4;
  QuadratureSpec hi = lo;
  hi.gauss_order = 8;
  QuadratureSpec ref = lo;
  ref.gauss_order = 40;
  ref.boundary_panels = 8;
  const cplx exact = integrate_boundary(ref, p, smooth);
  const double e_lo = std::abs(integrate_boundary(lo, p, smooth) - exact);
  const double e_hi = std::abs(integrate_boundary(hi, p, smooth) - exact);
  const double gain = e_lo / std::max(e_hi, 1e-15 * std::abs(exact));
  s.add(mod, "doubling Gauss order gains >= 1e4 (inverse gain)", 1.0 / gain, 1e-4);

  QuadratureSpec coarse;
  coarse.gauss_order = 3;
  coarse.boundary_panels = 2;
  coarse.corner_levels = 0;
  const auto rows = convergence_report_boundary(coarse, p, smooth, 2);
  const double b_order = rows.back().order;
  s.add(mod, "boundary self-convergence order >= 4 (4 - order)", 4.0 - b_order, 0.0,
        "order " + std::to_string(b_order));

  QuadratureSpec acoarse;
  acoarse.gauss_order = 4;
  acoarse.area_panels = 16;
  acoarse.strip_halfwidth = 6.0;
  auto smooth_area = [](cplx z) { return cplx(std::exp(z.real()) * std::cos(z.imag())); };
  const auto arows = convergence_report_area(acoarse, p, smooth_area, 2);
  const double a_order = arows.back().order;
  s.add(mod, "area self-convergence order >= 4 (4 - order)", 4.0 - a_order, 0.0,
        "order " + std::to_string(a_order));
}

std::vector<cplx> solver_points(const Suite& s, Sampler& rng) {
  std::vector<cplx> pts;
  for (int i = 0; i < (s.quick ? 6 : 20); ++i) pts.push_back(rng.interior(1e-2));
  return pts;
}

double max_error(const std::vector<PointSolution>& sol, const std::function<double(cplx)>& exact) {
  double e = 0;
  for (const auto& r : sol) {
    if (!r.w) throw Error(r.error);
    e = std::max(e, std::abs(*r.w - exact(r.z)));
  }
  return e;
}

double gauge_spread(const std::vector<PointSolution>& sol, const std::function<cplx(std::size_t)>& reference) {
  double lo = std::numeric_limits<double>::infinity(), hi = -lo, ilo = lo, ihi = -lo;
  for (std::size_t i = 0; i < sol.size(); ++i) {
    if (!sol[i].w) throw Error(sol[i].error);
    const cplx d = *sol[i].w - reference(i);
    lo = std::min(lo, d.real());
    hi = std::max(hi, d.real());
    ilo = std::min(ilo, d.imag());
    ihi = std::max(ihi, d.imag());
  }
  return std::max(hi - lo, ihi - ilo);
}

void solver_checks(Suite& s, Sampler& rng) {
  const std::string mod = "solvers";
  const LensParams& p = s.params;
  const QuadratureSpec spec;
  const std::vector<cplx> pts = solver_points(s, rng);

  s.guarded(mod, "Dirichlet gamma = 1", [&] {
    s.add(mod, "Dirichlet gamma = 1", max_error(solve_dirichlet(p, spec, BoundaryData::catalog("const"), {}, pts),
                                                [](cplx) { return 1.0; }), 1e-6);
  });
  s.guarded(mod, "Dirichlet w = Re z^3", [&] {
    s.add(mod, "Dirichlet w = Re z^3", max_error(solve_dirichlet(p, spec, BoundaryData::catalog("re_z3"), {}, pts),
                                                 [](cplx z) { return (z * z * z).real(); }), 1e-5);
  });
  s.guarded(mod, "Dirichlet w = |z|^2, f = 1", [&] {
    s.add(mod, "Dirichlet w = |z|^2, f = 1",
          max_error(solve_dirichlet(p, spec, BoundaryData::catalog("abs2"), SourceTerm::catalog("const"), pts),
                    [](cplx z) { return std::norm(z); }), 1e-4);
  });

  s.guarded(mod, "Dirichlet boundary attainment", [&] {
    double worst = 0;
    bool decreasing = true;
    for (int i = 0; i < (s.quick ? 2 : 6); ++i) {
      const ArcId arc = i % 2 ? ArcId::C1 : ArcId::C0;
      const BoundaryPoint bp = rng.boundary(arc, 0.05);
      const std::string kind = i % 3 == 0 ? "re_z3" : (i % 3 == 1 ? "im_z2" : "abs2");
      const BoundaryData gamma = BoundaryData::catalog(kind);
      const cplx nu = outward_normal(p, bp);
      std::vector<cplx> near{bp.point - 1e-2 * nu, bp.point - 1e-3 * nu};
      const auto sol = solve_dirichlet(p, spec, gamma, {}, near);
      const double target = catalog_value(kind, bp.point);
      const double e0 = std::abs(sol[0].w.value() - target), e1 = std::abs(sol[1].w.value() - target);
      // Data that is constant along the boundary (|z|^2 for n = 1) is attained to rounding.
      decreasing = decreasing && (e1 < e0 || e1 < 1e-12);
      worst = std::max(worst, e1);
    }
    s.add(mod, "Dirichlet boundary attainment (distance 1e-3)", worst, 5e-3);
    s.add(mod, "Dirichlet attainment error decreases (failures)", decreasing ? 0.0 : 1.0, 0.0);
  });

  s.guarded(mod, "Dirichlet resolution agreement", [&] {
    QuadratureSpec coarse;
    coarse.gauss_order = 10;
    coarse.boundary_panels = 4;
    coarse.area_radial = 16;
    coarse.area_angular = 10;
    QuadratureSpec fine = coarse;
    fine.gauss_order = 20;
    fine.boundary_panels = 8;
    fine.area_radial = 32;
    fine.area_angular = 20;
    const BoundaryData gamma = BoundaryData::catalog("re_z2");
    const SourceTerm f = SourceTerm::catalog("re");
    const auto a = solve_dirichlet(p, coarse, gamma, f, pts);
    const auto b = solve_dirichlet(p, fine, gamma, f, pts);
    double d = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) d = std::max(d, std::abs(a[i].w.value() - b[i].w.value()));
    s.add(mod, "Dirichlet coarse vs refined quadrature", d, 1e-6);
  });

  s.guarded(mod, "Neumann solvability", [&] {
    const Solvability sv =
        check_neumann_solvability(p, spec, BoundaryData::normal_derivative("abs2"), SourceTerm::catalog("const"));
    s.add(mod, "Neumann solvability for gamma = d|z|^2/dnu, f = 1", sv.defect,
          kSolvabilityTol * (1.0 + std::abs(sv.lhs) + std::abs(sv.rhs)));
    bool rejected = false;
    try {
      solve_neumann(p, spec, BoundaryData::catalog("const"), {}, pts);
    } catch (const SolvabilityError&) {
      rejected = true;
    }
    s.add(mod, "Neumann rejects incompatible data (failures)", rejected ? 0.0 : 1.0, 0.0);
  });

  s.guarded(mod, "Neumann manufactured", [&] {
    const auto a = solve_neumann(p, spec, BoundaryData::normal_derivative("re_z2"), {}, pts);
    s.add(mod, "Neumann w = Re z^2 up to a constant", gauge_spread(a, [&](std::size_t i) { return cplx((pts[i] * pts[i]).real()); }), 1e-4);
    const auto b = solve_neumann(p, spec, BoundaryData::normal_derivative("abs2"), SourceTerm::catalog("const"), pts);
    s.add(mod, "Neumann w = |z|^2, f = 1 up to a constant", gauge_spread(b, [&](std::size_t i) { return cplx(std::norm(pts[i])); }), 1e-4);

    QuadratureSpec coarse;
    coarse.gauss_order = 12;
    coarse.boundary_panels = 6;
    coarse.area_radial = 20;
    coarse.area_angular = 12;
    const auto c = solve_neumann(p, coarse, BoundaryData::normal_derivative("abs2"), SourceTerm::catalog("const"), pts);
    s.add(mod, "Neumann outputs at two resolutions differ by a constant",
          gauge_spread(c, [&](std::size_t i) { return b[i].w.value(); }), 1e-5);
  });

  s.guarded(mod, "Neumann derivative attainment", [&] {
    double worst = 0;
    const BoundaryData gamma = BoundaryData::normal_derivative("abs2");
    const SourceTerm f = SourceTerm::catalog("const");
    for (int i = 0; i < (s.quick ? 2 : 6); ++i) {
      const BoundaryPoint bp = rng.boundary(i % 2 ? ArcId::C1 : ArcId::C0, 0.05);
      const cplx nu = outward_normal(p, bp);
      const double d = 2e-4, h = 1e-4;
      const cplx c = bp.point - d * nu;
      const auto sol = solve_neumann(p, spec, gamma, f, {c + h * nu, c - h * nu});
      const double fd = (sol[0].w.value().real() - sol[1].w.value().real()) / (2.0 * h);
      worst = std::max(worst, std::abs(fd - gamma(p, bp).real()));
    }
    s.add(mod, "Neumann normal derivative attains gamma", worst, 1e-3);
  });

  s.guarded(mod, "density moment probe", [&] {
    std::vector<cplx> zetas;
    for (int i = 0; i < (s.quick ? 5 : 12); ++i) zetas.push_back(rng.interior(1e-2));
    const DensityMomentProbe probe = probe_density_moment(p, spec, zetas);
    const auto [lo, hi] = std::minmax_element(probe.values.begin(), probe.values.end());
    char note[128];
    std::snprintf(note, sizeof note, "values in [%.9g, %.9g]", *lo, *hi);
    s.info(mod, "∮ sigma(z) N1(z, zeta) ds_z spread over zeta", probe.spread, note);
  });
}

}  // namespace

bool ValidationReport::ok() const {
  return std::none_of(rows.begin(), rows.end(), [](const CheckRow& r) { return r.verdict == Verdict::Fail; });
}

ValidationReport run_validation(const LensParams& params, bool quick) {
  Suite s{params, quick, {}};
  Sampler rng(params);
  s.guarded("circle_geometry", "circle checks", [&] { circle_checks(s, rng); });
  s.guarded("lens_domain", "domain checks", [&] { domain_checks(s, rng); });
  s.guarded("kernels", "kernel checks", [&] { kernel_checks(s, rng); });
  s.guarded("conformal_oracle", "oracle checks", [&] { conformal_checks(s, rng); });
  s.guarded("quadrature", "quadrature checks", [&] { quadrature_checks(s); });
  solver_checks(s, rng);
  return s.report;
}

void print_report(std::ostream& out, const LensParams& params, const ValidationReport& report) {
  char line[512];
  std::snprintf(line, sizeof line, "lens validation: alpha = %.17g, n = %d, theta = %.17g\n", params.alpha(),
                params.n(), params.theta());
  out << line;
  std::snprintf(line, sizeof line, "%-18s %-58s %-12s %-10s %s\n", "module", "check", "value", "tolerance", "result");
  out << line;
  for (const auto& r : report.rows) {
    const char* verdict = r.verdict == Verdict::Pass ? "PASS" : (r.verdict == Verdict::Fail ? "FAIL" : "INFO");
    char tol[32];
    if (std::isnan(r.tolerance)) {
      std::snprintf(tol, sizeof tol, "-");
    } else {
      std::snprintf(tol, sizeof tol, "%.1e", r.tolerance);
    }
    std::snprintf(line, sizeof line, "%-18s %-58s %-12.3e %-10s %s", r.module.c_str(), r.name.c_str(), r.value, tol,
                  verdict);
    out << line;
    if (!r.note.empty()) out << "  " << r.note;
    out << '\n';
  }
  std::snprintf(line, sizeof line, "mass identity: %.12f\n", report.mass_identity);
  out << line;
  out << (report.ok() ? "all checks passed\n" : "validation FAILED\n");
}

}  // namespace lens
