#include "lens/kernels.hpp"

#include <cmath>
#include <utility>

#include "lens/error.hpp"
#include "simd/kernel_math.hpp"

namespace lens {

using detail::den_k;
using detail::num_k;

KernelField::KernelField(const LensParams& params) : params_(params) {
  const int n = params.n();
  auto& c = coeffs_;
  c.sp.resize(n);
  c.sk.resize(n);
  c.sm.resize(n);
  c.sk1.resize(n);
  c.sm1.resize(n);
  for (int k = 0; k < n; ++k) {
    c.sp[k] = params.sin_shift(k);
    c.sk[k] = params.sin_multiple(k);
    c.sm[k] = params.sin_shift(-k);
    c.sk1[k] = params.sin_multiple(k + 1);
    c.sm1[k] = params.sin_shift(-(k + 1));
  }
  c.sin_alpha = params.sin_shift(0);
  c.sin_theta = params.sin_multiple(1);
  c.s_minus = params.sin_shift(-1);
  c.s_plus = params.sin_shift(1);
}

void KernelField::require_pair(cplx z, cplx zeta, const char* what) const {
  for (cplx corner : {params_.upper_corner(), params_.lower_corner()}) {
    if (std::abs(z - corner) < kCornerEps || std::abs(zeta - corner) < kCornerEps) {
      throw Error(std::string(what) + ": corner argument");
    }
  }
  if (z == zeta) throw Error(std::string(what) + ": logarithmic pole at z == zeta");
}

namespace {

// G1 and N1 are symmetric, but the factors of (zeta, z) are those of (z, zeta)
// summed in another order; evaluating in a fixed argument order makes the
// computed values symmetric bit for bit.
bool swapped(cplx z, cplx zeta) {
  return z.real() != zeta.real() ? z.real() > zeta.real() : z.imag() > zeta.imag();
}

}  // namespace

double KernelField::green(cplx z, cplx zeta) const {
  require_pair(z, zeta, "green_g1");
  if (swapped(z, zeta)) std::swap(z, zeta);
  return detail::green_ref(coeffs_, n(), z, zeta);
}

double KernelField::poisson(cplx z, const BoundaryPoint& zeta) const {
  require_pair(z, zeta.point, "poisson_p");
  return detail::poisson_ref(coeffs_, n(), z, zeta.point, zeta.arc == ArcId::C0);
}

double KernelField::neumann(cplx z, cplx zeta) const {
  require_pair(z, zeta, "neumann_n1");
  if (swapped(z, zeta)) std::swap(z, zeta);
  return detail::neumann_ref(coeffs_, n(), z, zeta);
}

double KernelField::neumann_regular(cplx z, cplx zeta) const {
  // den_0 = (z - zeta) sin(alpha) carries the only singular factor.
  if (swapped(z, zeta)) std::swap(z, zeta);
  double s = std::log(std::abs(num_k(coeffs_, 0, z, zeta))) + std::log(coeffs_.sin_alpha);
  for (int k = 1; k < n(); ++k) {
    s += std::log(std::abs(num_k(coeffs_, k, z, zeta))) +
         std::log(std::abs(den_k(coeffs_, k, z, zeta)));
  }
  return -2.0 * s;
}

cplx KernelField::neumann_dz(cplx z, cplx zeta) const {
  require_pair(z, zeta, "neumann_dz");
  // Near the boundary an image factor is small and formed by cancellation, and
  // the derivative squares that loss; use extended precision here.
  using X = long double;
  using CX = std::complex<X>;
  const auto& c = coeffs_;
  const CX zt(zeta);
  CX s = 0.0;
  for (int k = 0; k < n(); ++k) {
    s -= (zt * X(c.sk[k]) + X(c.sm[k])) / detail::den_k_t<X>(c, k, z, zeta);
    s -= (std::conj(zt) * X(c.sp[k]) - X(c.sk[k])) / std::conj(detail::num_k_t<X>(c, k, z, zeta));
  }
  return {static_cast<double>(s.real()), static_cast<double>(s.imag())};
}

double KernelField::sigma(ArcId arc) const {
  const double nn = static_cast<double>(n());
  if (arc == ArcId::C1) return -2.0 * nn;
  return 2.0 * nn * coeffs_.s_minus / coeffs_.sin_alpha;
}

double KernelField::sigma(const BoundaryPoint& p) const {
  for (cplx corner : {params_.upper_corner(), params_.lower_corner()}) {
    if (std::abs(p.point - corner) < kCornerEps) throw Error("sigma: corner argument");
  }
  return sigma(p.arc);
}

cplx KernelField::orbit_prefactor(cplx z) const {
  const auto& c = coeffs_;
  double logmod = 0.0;
  double phase = 0.0;
  for (int k = 0; k < n(); ++k) {
    const cplx a = z * c.sk[k] - c.sp[k];
    const cplx b = std::conj(z) * c.sp[k] - c.sk[k];
    logmod += std::log(std::abs(a)) - std::log(std::abs(b));
    phase += std::arg(a) - std::arg(b);
  }
  return std::polar(std::exp(logmod), phase);
}

cplx KernelField::green_product(cplx z, cplx zeta) const {
  require_pair(z, zeta, "green_product");
  double logmod = 0.0;
  double phase = 0.0;
  for (int k = 0; k < n(); ++k) {
    const cplx a = num_k(coeffs_, k, z, zeta);
    const cplx b = den_k(coeffs_, k, z, zeta);
    logmod += std::log(std::abs(a)) - std::log(std::abs(b));
    phase += std::arg(a) - std::arg(b);
  }
  return std::polar(std::exp(logmod), phase);
}

cplx KernelField::blaschke_F(cplx z, cplx zeta) const {
  const ReflectionOrbit orb = orbit(params_, z);
  double logmod = 0.0;
  double phase = 0.0;
  for (int k = 0; k < n(); ++k) {
    const HomogeneousPoint& even = orb.points[2 * k];
    const HomogeneousPoint& odd = orb.points[2 * k + 1];
    // (zeta - u/v) = (zeta v - u) / v
    const cplx top = (zeta * odd.w() - odd.z()) * even.w();
    const cplx bottom = (zeta * even.w() - even.z()) * odd.w();
    if (std::abs(bottom) <= kGeomEps * kGeomEps || std::abs(top) <= kGeomEps * kGeomEps) {
      throw Error("blaschke_F: zeta coincides with an orbit point of z");
    }
    logmod += std::log(std::abs(top)) - std::log(std::abs(bottom));
    phase += std::arg(top) - std::arg(bottom);
  }
  return std::polar(std::exp(logmod), phase);
}

ReferenceKernels KernelField::reference() const {
  return {coeffs_.sin_alpha, coeffs_.sin_theta, coeffs_.s_minus, coeffs_.s_plus};
}

namespace {
void require_distinct(cplx z, cplx zeta, const char* what) {
  if (z == zeta) throw Error(std::string(what) + ": logarithmic pole at z == zeta");
}
}  // namespace

double ReferenceKernels::g0(cplx z, cplx zeta) const {
  require_distinct(z, zeta, "g0");
  const cplx zb = std::conj(z);
  const cplx top = zb * zeta * s_minus + zb * sin_theta + zeta * sin_theta - s_plus;
  return 2.0 * (std::log(std::abs(top)) - std::log(std::abs((z - zeta) * sin_alpha)));
}

double ReferenceKernels::p0(cplx z, cplx zeta) const {
  require_distinct(z, zeta, "p0");
  return -s_minus / sin_alpha +
         2.0 * ((z * s_minus + sin_theta) / ((z - zeta) * sin_alpha)).real();
}

double ReferenceKernels::g1(cplx z, cplx zeta) const {
  require_distinct(z, zeta, "g1");
  return 2.0 * (std::log(std::abs(std::conj(z) * zeta - 1.0)) - std::log(std::abs(z - zeta)));
}

double ReferenceKernels::p1(cplx z, cplx zeta) const {
  require_distinct(z, zeta, "p1");
  return 1.0 - 2.0 * (z / (z - zeta)).real();
}

}  // namespace lens
