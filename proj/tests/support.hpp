#pragma once
// Helpers shared by the unit tests and the acceptance runner: seeded sampling
// and oracles that do not go through the library's own formulas.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include "lens/domain.hpp"

namespace lens::testing {

inline constexpr double kPi = std::numbers::pi;

struct Case {
  double alpha;
  int n;
};

/// Parameter sets used across the suites; the first four are the oracle set.
inline const std::vector<Case>& standard_cases() {
  static const std::vector<Case> cases{{kPi / 2, 2},        {kPi / 3, 3}, {2 * kPi / 3, 2}, {kPi / 4, 4},
                                       {0.9 * kPi, 1},      {kPi / 2, 1}, {0.3, 2},         {2.8, 3},
                                       {1.5707963, 2}};
  return cases;
}

inline LensParams make(const Case& c) { return LensParams(c.alpha, c.n); }

/// Distance kept from the boundary where finite differences are taken. Scales
/// with the lens so thin lenses still get interior samples.
inline double fd_margin(const LensParams& p) {
  return std::min(0.05, 0.25 * distance_to_boundary(p, interior_probe(p)));
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed = 20240611) : gen_(seed) {}

  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(gen_); }

  cplx interior(const LensParams& p, double margin = 1e-6) {
    const Box box = bounding_box(p);
    for (;;) {
      const cplx z(uniform(box.x0, box.x1), uniform(box.y0, box.y1));
      if (classify(p, z) == Region::Interior && distance_to_boundary(p, z) > margin) return z;
    }
  }

  /// Boundary point with parameter fraction in [lo, hi] of the arc.
  BoundaryPoint boundary(const LensParams& p, ArcId arc, double lo = 0.02, double hi = 0.98) {
    const auto [t0, t1] = parameter_range(p, arc);
    return boundary_param(p, arc, t0 + (t1 - t0) * uniform(lo, hi));
  }

  /// Pair of interior points at least `gap` apart.
  std::pair<cplx, cplx> pair(const LensParams& p, double margin, double gap) {
    for (;;) {
      const cplx z = interior(p, margin), w = interior(p, margin);
      if (std::abs(z - w) > gap) return {z, w};
    }
  }

 private:
  std::mt19937_64 gen_;
};

// ---- oracles -------------------------------------------------------------

/// Unit-disc Green function log|(conj(z) zeta - 1) / (zeta - z)|^2.
inline double disc_green(cplx z, cplx zeta) {
  return 2.0 * (std::log(std::abs(std::conj(z) * zeta - 1.0)) - std::log(std::abs(zeta - z)));
}

struct PlainCircle {
  cplx center;
  double radius;
};

/// Circle through three points (circumcircle).
inline PlainCircle circle_through(cplx a, cplx b, cplx c) {
  const double ax = a.real(), ay = a.imag(), bx = b.real(), by = b.imag(), cx = c.real(), cy = c.imag();
  const double d = 2.0 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by));
  const double ux = (std::norm(a) * (by - cy) + std::norm(b) * (cy - ay) + std::norm(c) * (ay - by)) / d;
  const double uy = (std::norm(a) * (cx - bx) + std::norm(b) * (ax - cx) + std::norm(c) * (bx - ax)) / d;
  const cplx center(ux, uy);
  return {center, std::abs(a - center)};
}

/// Inversion in |z - c| = r.
inline cplx invert(const PlainCircle& m, cplx z) {
  return m.center + m.radius * m.radius / std::conj(z - m.center);
}

/// C0 carrier circle from the defining inequality (alpha != theta).
inline PlainCircle c0_carrier(const LensParams& p) {
  const double s1 = std::sin(p.alpha() - p.theta());
  return {cplx(-std::sin(p.theta()) / s1, 0.0), std::sin(p.alpha()) / std::abs(s1)};
}

/// Area of D0 by the shoelace formula on a dense polygon through the arcs,
/// built from the carrier geometry directly.
inline double polygon_area(const LensParams& p, int per_arc = 200000) {
  std::vector<cplx> pts;
  const double a = p.alpha();
  for (int i = 0; i <= per_arc; ++i) pts.push_back(std::polar(1.0, -a + 2.0 * a * i / per_arc));
  const cplx top = std::polar(1.0, a), bottom = std::conj(top);
  if (std::abs(a - p.theta()) < 1e-15) {
    for (int i = 1; i < per_arc; ++i) pts.push_back(top + (bottom - top) * (double(i) / per_arc));
  } else {
    const PlainCircle c = c0_carrier(p);
    double t0 = std::arg(top - c.center), t1 = std::arg(bottom - c.center);
    // walk the sub-arc whose midpoint satisfies |z| <= 1
    double span = t1 - t0;
    while (span <= -2 * kPi) span += 2 * kPi;
    while (span > 0) span -= 2 * kPi;  // clockwise candidate
    const cplx mid_cw = c.center + std::polar(c.radius, t0 + 0.5 * span);
    if (std::abs(mid_cw) > 1.0) span += 2 * kPi;
    for (int i = 1; i < per_arc; ++i) pts.push_back(c.center + std::polar(c.radius, t0 + span * i / per_arc));
  }
  double s = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const cplx u = pts[i], v = pts[(i + 1) % pts.size()];
    s += u.real() * v.imag() - u.imag() * v.real();
  }
  return 0.5 * std::abs(s);
}

/// Circular-segment area: unit-circle segment cut by the chord through the
/// corners, corrected by the segment between the chord and C0.
inline double segment_area(const LensParams& p) {
  const double a = p.alpha();
  const double unit = a - std::sin(a) * std::cos(a);
  const double diff = a - p.theta();
  if (diff == 0.0) return unit;
  const double x = 2.0 * std::abs(diff);
  const double r = std::sin(a) / std::sin(std::abs(diff));
  // x - sin x cancels for the nearly straight arcs
  const double xs = x < 1e-3 ? x * x * x / 6.0 * (1.0 - x * x / 20.0) : x - std::sin(x);
  const double seg = 0.5 * r * r * xs;
  return diff > 0 ? unit - seg : unit + seg;
}

/// Fourth-order central difference of f along direction nu.
inline double central_diff(const std::function<double(cplx)>& f, cplx at, cplx nu, double h) {
  return (8.0 * (f(at + h * nu) - f(at - h * nu)) - (f(at + 2.0 * h * nu) - f(at - 2.0 * h * nu))) / (12.0 * h);
}

/// 5-point Laplacians at h and h/2 combined to cancel the h^2 term.
inline double laplacian(const std::function<double(cplx)>& f, cplx z, double h) {
  auto five = [&](double s) {
    return (f(z + s) + f(z - s) + f(z + cplx(0, s)) + f(z - cplx(0, s)) - 4.0 * f(z)) / (s * s);
  };
  return (4.0 * five(0.5 * h) - five(h)) / 3.0;
}

}  // namespace lens::testing
