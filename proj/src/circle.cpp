#include "lens/circle.hpp"

#include <algorithm>
#include <cmath>

#include "lens/error.hpp"

namespace lens {

HomogeneousPoint::HomogeneousPoint(cplx z) : z_(z), w_(1.0) {}

HomogeneousPoint::HomogeneousPoint(cplx z, cplx w) : z_(z), w_(w) {
  if (z == cplx(0.0) && w == cplx(0.0)) throw Error("homogeneous point [0:0] is undefined");
  normalize();
}

void HomogeneousPoint::normalize() {
  if (w_ == cplx(0.0)) {
    z_ = 1.0;
    return;
  }
  if (std::abs(z_) > std::abs(w_)) {
    w_ /= z_;
    z_ = 1.0;
  } else {
    z_ /= w_;
    w_ = 1.0;
  }
}

std::optional<cplx> HomogeneousPoint::finite() const {
  if (is_infinite()) return std::nullopt;
  return z_ / w_;
}

bool HomogeneousPoint::same_as(const HomogeneousPoint& other, double eps) const {
  // cross ratio test z1 w2 - z2 w1 = 0 on normalized pairs
  return std::abs(z_ * other.w_ - other.z_ * w_) <= eps;
}

CircleMatrix::CircleMatrix(double a, cplx b, double c) : a_(a), b_(b), c_(c) {
  if (!(det() < 0.0)) throw Error("circle matrix must have negative determinant");
}

CircleMatrix CircleMatrix::from_center_radius(cplx center, double radius) {
  return {1.0, -center, std::norm(center) - radius * radius};
}

bool CircleMatrix::is_line() const {
  const double scale = std::max({std::abs(a_), std::abs(b_), std::abs(c_)});
  return std::abs(a_) <= 1e-14 * scale;
}

double CircleMatrix::radius() const { return std::sqrt(std::norm(b_) - a_ * c_) / std::abs(a_); }

CircleMatrix CircleMatrix::canonical() const {
  double s = std::max({std::abs(a_), std::abs(b_), std::abs(c_)});
  double a = a_ / s;
  cplx b = b_ / s;
  double c = c_ / s;
  bool flip = false;
  if (a != 0.0) {
    flip = a < 0.0;
  } else if (b.real() != 0.0) {
    flip = b.real() < 0.0;
  } else {
    flip = b.imag() < 0.0;
  }
  if (flip) {
    a = -a;
    b = -b;
    c = -c;
  }
  return {a, b, c};
}

bool CircleMatrix::equivalent(const CircleMatrix& other, double eps) const {
  // The sign picked by canonical() is unstable for near-lines (a ~ 1e-15), so
  // accept either sign.
  const CircleMatrix p = canonical();
  const CircleMatrix q = other.canonical();
  const auto close = [&](double sg) {
    return std::abs(p.a_ - sg * q.a_) <= eps && std::abs(p.b_ - sg * q.b_) <= eps &&
           std::abs(p.c_ - sg * q.c_) <= eps;
  };
  return close(1.0) || close(-1.0);
}

double CircleMatrix::form(const HomogeneousPoint& p) const {
  const CircleMatrix m = canonical();
  const cplx z = p.z();
  const cplx w = p.w();
  // [z w] [[a, conj b], [b, c]] [conj z, conj w]^T
  const cplx v = m.a_ * z * std::conj(z) + std::conj(m.b_) * z * std::conj(w) +
                 m.b_ * w * std::conj(z) + m.c_ * w * std::conj(w);
  return v.real();
}

bool circle_contains(const CircleMatrix& circle, const HomogeneousPoint& p) {
  return std::abs(circle.form(p)) <= kGeomEps;
}

HomogeneousPoint reflect_point(const CircleMatrix& mirror, const HomogeneousPoint& p) {
  // conj([z:w] A P) with P = [[0, 1], [-1, 0]]
  const cplx z = p.z();
  const cplx w = p.w();
  const cplx u = -(std::conj(mirror.b()) * z + mirror.c() * w);
  const cplx v = mirror.a() * z + mirror.b() * w;
  return {std::conj(u), std::conj(v)};
}

CircleMatrix reflect_circle(const CircleMatrix& mirror, const CircleMatrix& target) {
  // b^{-1} ~ adj(b) up to the (negative) real factor 1/det(b). Extended
  // precision keeps the double reflection in a small far-away mirror exact to ~1e-13.
  using ld = long double;
  using lc = std::complex<ld>;
  const CircleMatrix a = mirror.canonical();
  const CircleMatrix b = target.canonical();
  const ld aa = a.a();
  const lc ab(a.b().real(), a.b().imag());
  const ld ac = a.c();
  const ld ba = b.c();
  const lc bb(-b.b().real(), -b.b().imag());
  const ld bc = b.a();
  // M = A * adj(B) * A with A = [[aa, conj ab], [ab, ac]], adj(B) = [[ba, conj bb], [bb, bc]]
  const lc m00 = aa * ba + std::conj(ab) * bb;
  const lc m01 = aa * std::conj(bb) + std::conj(ab) * bc;
  const lc m10 = ab * ba + ac * bb;
  const lc m11 = ab * std::conj(bb) + ac * bc;
  const lc r00 = m00 * aa + m01 * ab;
  const lc r10 = m10 * aa + m11 * ab;
  const lc r11 = m10 * std::conj(ab) + m11 * ac;
  const ld scale = std::max({std::abs(r00.real()), std::abs(r10), std::abs(r11.real())});
  return CircleMatrix(static_cast<double>(r00.real() / scale),
                      cplx(static_cast<double>(r10.real() / scale), static_cast<double>(r10.imag() / scale)),
                      static_cast<double>(r11.real() / scale))
      .canonical();
}

}  // namespace lens
