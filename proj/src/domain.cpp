#include "lens/domain.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lens/error.hpp"

namespace lens {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr long double kPiL = std::numbers::pi_v<long double>;

struct C0Arc {
  bool segment;
  double mid;     // x_mid
  double radius;
  double half;    // half parameter range
  bool bulges_right;  // center left of the midpoint (alpha > theta)
  // Midpoint and radius from the rounded carrier coefficients, kept in extended
  // precision so sampled points satisfy the carrier equation to the last bit.
  long double mid_l;
  long double radius_l;
};

C0Arc c0_arc(const LensParams& p) {
  const double alpha = p.alpha();
  C0Arc arc{};
  arc.mid = c0_midpoint(p);
  const long double s1 = p.sin_shift(-1);
  const long double st = p.sin_multiple(1);
  const long double s2 = p.sin_shift(1);
  if (p.chord()) {
    arc.segment = true;
    arc.half = std::sin(alpha);
    arc.mid_l = s2 / (2.0L * st);
    arc.radius_l = 0;
    return arc;
  }
  arc.segment = false;
  arc.radius = std::sin(alpha) / std::abs(p.sin_shift(-1));
  arc.half = std::abs(p.alpha_minus_theta());
  arc.bulges_right = p.alpha_minus_theta() > 0;
  // Root of s1 x^2 + 2 st x - s2 = 0 in the form that stays stable as s1 -> 0.
  const long double root = std::sqrt(st * st + s1 * s2);
  arc.radius_l = root / std::fabs(s1);
  arc.mid_l = s2 / (st + root);
  return arc;
}

cplx c0_point(const C0Arc& arc, double t) {
  if (arc.segment) return {static_cast<double>(arc.mid_l), t};
  const long double s = std::sin(0.5L * t);
  const long double sag = 2.0L * arc.radius_l * s * s;
  const long double x = arc.mid_l + (arc.bulges_right ? -sag : sag);
  return {static_cast<double>(x), static_cast<double>(arc.radius_l * std::sin(static_cast<long double>(t)))};
}

void require_not_corner(const LensParams& p, cplx z, const char* what) {
  if (std::abs(z - p.upper_corner()) < kCornerEps || std::abs(z - p.lower_corner()) < kCornerEps) {
    throw Error(std::string(what) + ": point is a corner of the domain");
  }
}

}  // namespace

LensParams::LensParams(double alpha, int n) : alpha_(alpha), n_(n) {
  if (!(n >= 1)) throw Error("n must be a positive integer");
  if (!(alpha > 0.0 && alpha < kPi)) throw Error("alpha must lie in (0, pi)");
  if (std::abs(alpha_ - theta()) <= 1e-14) alpha_ = theta();
}

LensParams LensParams::from_pi_fraction(long num, long den, int n) {
  if (den == 0) throw Error("alpha-pi: zero denominator");
  return LensParams(kPi * static_cast<double>(num) / static_cast<double>(den), n);
}

double LensParams::theta() const { return kPi / n_; }

double LensParams::sin_shift(long j) const {
  // sin(alpha + (j +- n) theta) = -sin(alpha + j theta); bring j into [-n/2, n/2].
  const long n = n_;
  j = ((j % (2 * n)) + 2 * n) % (2 * n);
  double sign = 1.0;
  if (j >= n) {
    j -= n;
    sign = -1.0;
  }
  if (2 * j > n) {
    j -= n;
    sign = -sign;
  }
  if (j == 0) return sign * std::sin(alpha_);
  if (chord()) return sign * sin_multiple(j + 1);
  // alpha + j theta lies in (-pi/2, 3pi/2); write it as +-(alpha - M pi / n)
  // so values near 0 and pi come out with full relative accuracy
  if (2 * (n_ * static_cast<long double>(alpha_) + j * kPiL) <= n_ * kPiL) {
    return sign * static_cast<double>(std::sin(alpha_minus_pi_over(-j)));
  }
  return -sign * static_cast<double>(std::sin(alpha_minus_pi_over(n - j)));
}

double LensParams::sin_multiple(long j) const {
  const long n = n_;
  j = ((j % (2 * n)) + 2 * n) % (2 * n);
  double sign = 1.0;
  if (j >= n) {
    j -= n;
    sign = -1.0;
  }
  if (2 * j > n) j = n - j;
  if (j == 0) return 0.0;
  return sign * static_cast<double>(std::sin(static_cast<long double>(j) * kPiL / n_));
}

bool LensParams::chord() const { return alpha_ == theta(); }

long double LensParams::alpha_minus_pi_over(long m) const {
  // alpha - m pi / n with pi split as P1 + P2 (P1 = pi rounded to double):
  // n alpha and m P1 are exact in long double and nearly cancel exactly
  constexpr long double kP1 = std::numbers::pi;
  constexpr long double kP2 = 1.2246467991473531772260659322750011e-16L;
  const long double mm = static_cast<long double>(m);
  return ((static_cast<long double>(n_) * alpha_ - mm * kP1) - mm * kP2) / n_;
}

double LensParams::alpha_minus_theta() const {
  return chord() ? 0.0 : static_cast<double>(alpha_minus_pi_over(1));
}

cplx LensParams::upper_corner() const { return std::polar(1.0, alpha_); }
cplx LensParams::lower_corner() const { return std::polar(1.0, -alpha_); }

std::string to_string(ArcId arc) { return arc == ArcId::C0 ? "C0" : "C1"; }

std::string to_string(Region r) {
  switch (r) {
    case Region::Interior: return "interior";
    case Region::BoundaryC0: return "boundary_C0";
    case Region::BoundaryC1: return "boundary_C1";
    case Region::Corner: return "corner";
    case Region::Exterior: return "exterior";
  }
  return "?";
}

cplx ReflectionOrbit::at(std::size_t k) const {
  auto v = points.at(k).finite();
  if (!v) throw Error("orbit point z_" + std::to_string(k) + " is infinite");
  return *v;
}

CircleMatrix arc_matrix(const LensParams& params, long k) {
  const long period = 2L * params.n();
  const long kr = ((k % period) + period) % period;
  return {-params.sin_shift(kr - 1), cplx(params.sin_multiple(kr - 1)), params.sin_shift(1 - kr)};
}

ReflectionOrbit orbit(const LensParams& params, cplx z) {
  require_not_corner(params, z, "orbit");
  ReflectionOrbit out{z, {}};
  out.points.reserve(2 * params.n());
  const cplx zb = std::conj(z);
  for (int k = 0; k < params.n(); ++k) {
    const double sk = params.sin_multiple(k);
    const double sp = params.sin_shift(k);
    const double sm = params.sin_shift(-k);
    out.points.emplace_back(-z * sm - sk, z * sk - sp);
    out.points.emplace_back(zb * sk + sm, zb * sp - sk);
  }
  return out;
}

Region classify(const LensParams& params, cplx z) {
  if (std::abs(z - params.upper_corner()) < kCornerEps ||
      std::abs(z - params.lower_corner()) < kCornerEps) {
    return Region::Corner;
  }
  const double s1 = params.sin_shift(-1);
  const double st = params.sin_multiple(1);
  const double s2 = params.sin_shift(1);
  const double scale = std::max({std::abs(s1), std::abs(st), std::abs(s2)});
  const double r2 = std::norm(z);
  const double f1 = r2 - 1.0;                                        // <= 0 inside
  const double f0 = (r2 * s1 + 2.0 * z.real() * st - s2) / scale;    // >= 0 inside
  const bool on1 = std::abs(f1) <= kGeomEps;
  const bool on0 = std::abs(f0) <= kGeomEps;
  if (on1 && on0) {
    // Only for n = 1, where both carriers are the unit circle.
    return std::abs(std::arg(z)) <= params.alpha() ? Region::BoundaryC1 : Region::BoundaryC0;
  }
  if (on1 && f0 > 0.0) return Region::BoundaryC1;
  if (on0 && f1 < 0.0) return Region::BoundaryC0;
  if (f1 < 0.0 && f0 > 0.0) return Region::Interior;
  return Region::Exterior;
}

double c0_midpoint(const LensParams& params) {
  const double a = params.alpha();
  const double t = params.theta();
  return std::cos(0.5 * (a + t)) / std::cos(0.5 * (a - t));
}

cplx interior_probe(const LensParams& params) { return {0.5 * (c0_midpoint(params) + 1.0), 0.0}; }

std::pair<double, double> parameter_range(const LensParams& params, ArcId arc) {
  if (arc == ArcId::C1) return {-params.alpha(), params.alpha()};
  const C0Arc a = c0_arc(params);
  return {-a.half, a.half};
}

double parameter_speed(const LensParams& params, ArcId arc) {
  if (arc == ArcId::C1) return 1.0;
  const C0Arc a = c0_arc(params);
  return a.segment ? 1.0 : a.radius;
}

ArcShape arc_shape(const LensParams& params, ArcId arc) {
  ArcShape s;
  auto [lo, hi] = parameter_range(params, arc);
  s.t_min = lo;
  s.t_max = hi;
  s.from = params.lower_corner();
  s.to = params.upper_corner();
  if (arc == ArcId::C1) {
    s.center = 0.0;
    s.radius = 1.0;
    return s;
  }
  const C0Arc a = c0_arc(params);
  if (a.segment) {
    s.is_segment = true;
    return s;
  }
  s.radius = a.radius;
  s.center = cplx(a.bulges_right ? a.mid - a.radius : a.mid + a.radius, 0.0);
  return s;
}

BoundaryPoint boundary_param(const LensParams& params, ArcId arc, double t) {
  auto [lo, hi] = parameter_range(params, arc);
  if (!(t >= lo && t <= hi)) {
    throw Error("boundary parameter " + std::to_string(t) + " outside [" + std::to_string(lo) +
                ", " + std::to_string(hi) + "] on " + to_string(arc));
  }
  if (arc == ArcId::C1) return {arc, t, std::polar(1.0, t), t - lo};
  const C0Arc a = c0_arc(params);
  const double speed = a.segment ? 1.0 : a.radius;
  return {arc, t, c0_point(a, t), speed * (t - lo)};
}

double carrier_defect(const LensParams& params, ArcId arc, cplx z) {
  const long double x = z.real(), y = z.imag();
  const long double r2 = x * x + y * y;
  if (arc == ArcId::C1) return static_cast<double>(r2 - 1.0L);
  const long double s1 = params.sin_shift(-1), st = params.sin_multiple(1), s2 = params.sin_shift(1);
  const long double scale = std::max({std::fabs(s1), std::fabs(st), std::fabs(s2)});
  return static_cast<double>((r2 * s1 + 2.0L * x * st - s2) / scale);
}

BoundaryPoint boundary_param_exact(const LensParams& params, ArcId arc, double t) {
  constexpr int kScan = 4000;
  constexpr double kGood = 1e-19;
  auto [lo, hi] = parameter_range(params, arc);
  const double step = 1e-12 * (hi - lo);
  BoundaryPoint best = boundary_param(params, arc, t);
  double best_defect = std::abs(carrier_defect(params, arc, best.point));
  for (int i = 1; i <= kScan && best_defect > kGood; ++i) {
    for (double sgn : {1.0, -1.0}) {
      const double ti = t + sgn * i * step;
      if (!(ti > lo && ti < hi)) continue;
      const BoundaryPoint bp = boundary_param(params, arc, ti);
      const double d = std::abs(carrier_defect(params, arc, bp.point));
      if (d < best_defect) {
        best = bp;
        best_defect = d;
      }
    }
  }
  return best;
}

std::pair<cplx, cplx> outward_normal_coeffs(const LensParams& params, const BoundaryPoint& p) {
  require_not_corner(params, p.point, "outward normal");
  const cplx nu = outward_normal(params, p);
  return {nu, std::conj(nu)};
}

cplx outward_normal(const LensParams& params, const BoundaryPoint& p) {
  const cplx z = p.point;
  if (p.arc == ArcId::C1) return z;
  return -(z * params.sin_shift(-1) + params.sin_multiple(1)) / params.sin_shift(0);
}

std::pair<double, double> arc_lengths(const LensParams& params) {
  const double alpha = params.alpha();
  const double c1 = 2.0 * alpha;
  if (params.chord()) return {2.0 * std::sin(alpha), c1};
  return {2.0 * params.alpha_minus_theta() * std::sin(alpha) / params.sin_shift(-1), c1};
}

std::pair<double, double> nearest_on_arc(const LensParams& params, ArcId arc, cplx z) {
  auto [lo, hi] = parameter_range(params, arc);
  double t;
  if (arc == ArcId::C1) {
    t = z == cplx(0.0) ? 0.0 : std::arg(z);
  } else {
    const C0Arc a = c0_arc(params);
    if (a.segment) {
      t = z.imag();
    } else if (a.bulges_right) {
      t = std::arg(z - cplx(a.mid - a.radius, 0.0));
    } else {
      t = std::arg(-(z - cplx(a.mid + a.radius, 0.0)));
      // the parametrization runs clockwise about the center
      t = -t;
    }
  }
  t = std::clamp(t, lo, hi);
  return {t, std::abs(z - boundary_param(params, arc, t).point)};
}

double distance_to_boundary(const LensParams& params, cplx z) {
  return std::min(nearest_on_arc(params, ArcId::C0, z).second,
                  nearest_on_arc(params, ArcId::C1, z).second);
}

Box bounding_box(const LensParams& params) {
  Box b{1e300, -1e300, 1e300, -1e300};
  constexpr int kSamples = 4096;
  for (ArcId arc : {ArcId::C0, ArcId::C1}) {
    auto [lo, hi] = parameter_range(params, arc);
    for (int i = 0; i <= kSamples; ++i) {
      const double t = lo + (hi - lo) * i / kSamples;
      const cplx p = boundary_param(params, arc, t).point;
      b.x0 = std::min(b.x0, p.real());
      b.x1 = std::max(b.x1, p.real());
      b.y0 = std::min(b.y0, p.imag());
      b.y1 = std::max(b.y1, p.imag());
    }
  }
  return b;
}

}  // namespace lens
