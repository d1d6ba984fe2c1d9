#pragma once
// Circles and lines of the extended complex plane as 2x2 Hermitian matrices
//
//     [ a    conj(b) ]
//     [ b    c       ]     a z conj(z) + conj(b) z + b conj(z) + c = 0
//
// with a, c real and a c - |b|^2 < 0. Matrices are defined up to a nonzero
// real factor. Points are homogeneous pairs [z : w].

#include <complex>
#include <optional>

namespace lens {

using cplx = std::complex<double>;

/// Absolute tolerance for containment and equivalence after normalization.
inline constexpr double kGeomEps = 1e-10;

class HomogeneousPoint {
 public:
  /// Finite point z, i.e. [z : 1].
  explicit HomogeneousPoint(cplx z);
  /// [z : w]; throws lens::Error for (0, 0).
  HomogeneousPoint(cplx z, cplx w);

  static HomogeneousPoint infinity() { return HomogeneousPoint(cplx(1.0), cplx(0.0)); }

  cplx z() const { return z_; }
  cplx w() const { return w_; }
  bool is_infinite() const { return w_ == cplx(0.0); }
  /// z / w; std::nullopt for the point at infinity.
  std::optional<cplx> finite() const;

  /// Same point of the projective line, compared in canonical form.
  bool same_as(const HomogeneousPoint& other, double eps = kGeomEps) const;

 private:
  void normalize();
  cplx z_, w_;
};

class CircleMatrix {
 public:
  /// Throws lens::Error unless a c - |b|^2 < 0.
  CircleMatrix(double a, cplx b, double c);

  static CircleMatrix unit_circle() { return {1.0, 0.0, -1.0}; }
  /// |z - center| = radius.
  static CircleMatrix from_center_radius(cplx center, double radius);

  double a() const { return a_; }
  cplx b() const { return b_; }
  double c() const { return c_; }
  double det() const { return a_ * c_ - std::norm(b_); }

  bool is_line() const;
  /// Center and radius; only meaningful when !is_line().
  cplx center() const { return -b_ / a_; }
  double radius() const;

  /// Representative scaled so the largest entry has modulus 1, with sign fixed
  /// by a > 0, else Re b > 0, else Im b > 0.
  CircleMatrix canonical() const;
  bool equivalent(const CircleMatrix& other, double eps = kGeomEps) const;

  /// Hermitian form [z:w] M [conj z : conj w]^T with both arguments normalized.
  double form(const HomogeneousPoint& p) const;

 private:
  double a_;
  cplx b_;
  double c_;
};

bool circle_contains(const CircleMatrix& circle, const HomogeneousPoint& p);

/// Reflection (inversion) of p in the circle; maps the center to infinity.
HomogeneousPoint reflect_point(const CircleMatrix& mirror, const HomogeneousPoint& p);

/// Image of circle b under reflection in circle a: the class of a b^{-1} a.
CircleMatrix reflect_circle(const CircleMatrix& a, const CircleMatrix& b);

}  // namespace lens
