#pragma once
// Lens domain D0 bounded by the unit-circle arc C1 and the arc C0, meeting at
// the corners e^{+-i alpha} with interior angle theta = pi / n.
//
//   D0 = { |z| <= 1,  |z|^2 sin(alpha - theta) + 2 Re z sin(theta) - sin(alpha + theta) >= 0 }
//
// Successive reflections of D0 in its boundary arcs tile the plane with 2n
// copies; arc_matrix() gives the k-th arc of that tiling and orbit() the
// images of a point.

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "lens/circle.hpp"

namespace lens {

/// Points closer than this to a corner are rejected where a non-corner point is required.
inline constexpr double kCornerEps = 1e-7;

class LensParams {
 public:
  /// 0 < alpha < pi, n >= 1. alpha within 1e-14 of pi/n is snapped to pi/n.
  LensParams(double alpha, int n);
  /// alpha = pi * num / den.
  static LensParams from_pi_fraction(long num, long den, int n);

  double alpha() const { return alpha_; }
  int n() const { return n_; }
  double theta() const;

  /// sin(alpha + j theta) and sin(j theta), reduced by the symmetries of the
  /// 2n-fold tiling so that mirrored entries agree bit for bit and sin(n theta) is 0.
  double sin_shift(long j) const;
  double sin_multiple(long j) const;
  /// alpha - theta with theta = pi / n taken in extended precision.
  double alpha_minus_theta() const;

  /// True when C0 is the straight chord (alpha == theta).
  bool chord() const;

  cplx upper_corner() const;
  cplx lower_corner() const;

  friend bool operator==(const LensParams&, const LensParams&) = default;

 private:
  long double alpha_minus_pi_over(long m) const;  // alpha - m pi / n

  double alpha_;
  int n_;
};

enum class ArcId { C0, C1 };

std::string to_string(ArcId arc);

enum class Region { Interior, BoundaryC0, BoundaryC1, Corner, Exterior };

std::string to_string(Region r);

struct BoundaryPoint {
  ArcId arc;
  double t;       // native parameter of the arc
  cplx point;
  double arclen;  // arc length measured from the t_min end
};

struct ReflectionOrbit {
  cplx base;
  /// z_0 ... z_{2n-1}; entries may be the point at infinity.
  std::vector<HomogeneousPoint> points;

  /// Finite value of z_k; throws lens::Error if z_k is infinite.
  cplx at(std::size_t k) const;
};

/// Geometry of one boundary arc: either a circle arc or the straight chord.
struct ArcShape {
  bool is_segment = false;
  cplx center{};      // carrier circle (arcs)
  double radius = 0;  // carrier circle (arcs)
  cplx from{}, to{};  // endpoints, ordered by increasing t
  double t_min = 0, t_max = 0;
};

/// Matrix of the k-th arc of the reflection tiling; k = 1 is the unit circle,
/// k = 0 the carrier of C0. Periodic in k with period 2n.
CircleMatrix arc_matrix(const LensParams& params, long k);

/// Reflection orbit z_0 = z, z_1 = 1/conj(z), ...; throws at a corner.
ReflectionOrbit orbit(const LensParams& params, cplx z);

Region classify(const LensParams& params, cplx z);

/// Native parameter interval of an arc. C1: t in [-alpha, alpha] (angle);
/// C0: angle on the carrier circle measured from the arc midpoint, or the
/// imaginary coordinate when C0 is the chord.
std::pair<double, double> parameter_range(const LensParams& params, ArcId arc);

ArcShape arc_shape(const LensParams& params, ArcId arc);

/// Throws lens::Error for t outside parameter_range().
BoundaryPoint boundary_param(const LensParams& params, ArcId arc, double t);

/// Residual of the carrier equation of `arc` at z, evaluated in extended precision
/// and scaled by the largest coefficient. Zero means z lies on the carrier.
double carrier_defect(const LensParams& params, ArcId arc, cplx z);

/// boundary_param at the parameter closest to t (scanning a few thousand ulps of
/// arc length) whose rounded point has the smallest carrier_defect. Used where
/// kernels are probed within ~1e-6 of the boundary and a 1e-16 offset matters.
BoundaryPoint boundary_param_exact(const LensParams& params, ArcId arc, double t);

/// |d point / dt| (constant on each arc).
double parameter_speed(const LensParams& params, ArcId arc);

/// (coefficient of d/dzeta, coefficient of d/dconj(zeta)) of the outward
/// normal derivative at p. Throws at a corner.
std::pair<cplx, cplx> outward_normal_coeffs(const LensParams& params, const BoundaryPoint& p);

/// Unit outward normal as a complex number (first coefficient above).
cplx outward_normal(const LensParams& params, const BoundaryPoint& p);

/// (length of C0, length of C1).
std::pair<double, double> arc_lengths(const LensParams& params);

/// Real point where C0 crosses the real axis; D0 meets the real axis in [x_mid, 1].
double c0_midpoint(const LensParams& params);

/// A fixed interior point on the real axis.
cplx interior_probe(const LensParams& params);

/// Parameter of the point of `arc` nearest to z, and the distance to it.
std::pair<double, double> nearest_on_arc(const LensParams& params, ArcId arc, cplx z);

/// Euclidean distance from z to the boundary.
double distance_to_boundary(const LensParams& params, cplx z);

struct Box {
  double x0, x1, y0, y1;
};
Box bounding_box(const LensParams& params);

}  // namespace lens
