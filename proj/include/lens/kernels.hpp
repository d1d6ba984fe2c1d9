#pragma once
// Closed-form kernels of the lens domain built from the reflection orbit.
//
// With s+_k = sin(alpha + k theta), s_k = sin(k theta), s-_k = sin(alpha - k theta):
//
//   num_k(z, zeta) = conj(z) zeta s+_k - (conj(z) + zeta) s_k - s-_k
//   den_k(z, zeta) = z zeta s_k + z s-_k - zeta s+_k + s_k
//
//   G1(z, zeta) =  log prod_k |num_k / den_k|^2     (Green function)
//   N1(z, zeta) = -log prod_k |num_k den_k|^2       (Neumann function)
//
// Products are accumulated as sums of logarithms of factor moduli.

#include <vector>

#include "lens/domain.hpp"

namespace lens {

struct KernelCoeffs {
  std::vector<double> sp;   // sin(alpha + k theta)
  std::vector<double> sk;   // sin(k theta)
  std::vector<double> sm;   // sin(alpha - k theta)
  std::vector<double> sk1;  // sin((k + 1) theta)
  std::vector<double> sm1;  // sin(alpha - (k + 1) theta)
  double sin_alpha = 0;
  double sin_theta = 0;
  double s_minus = 0;  // sin(alpha - theta)
  double s_plus = 0;   // sin(alpha + theta)
};

struct ReferenceKernels;

class KernelField {
 public:
  explicit KernelField(const LensParams& params);

  const LensParams& params() const { return params_; }
  const KernelCoeffs& coeffs() const { return coeffs_; }
  int n() const { return params_.n(); }

  /// G1(z, zeta). Throws for z == zeta or a corner argument.
  double green(cplx z, cplx zeta) const;

  /// Poisson kernel p(z, zeta) = -1/2 d/dnu_zeta G1(z, zeta) for zeta on the boundary.
  double poisson(cplx z, const BoundaryPoint& zeta) const;

  double neumann(cplx z, cplx zeta) const;
  /// N1(z, zeta) + log|zeta - z|^2, finite at z == zeta.
  double neumann_regular(cplx z, cplx zeta) const;
  /// d/dz N1(z, zeta).
  cplx neumann_dz(cplx z, cplx zeta) const;

  /// Outward normal derivative of N1 on the boundary (piecewise constant).
  double sigma(const BoundaryPoint& p) const;
  double sigma(ArcId arc) const;

  /// prod_k (z s_k - s+_k) / (conj(z) s+_k - s_k); unimodular on the boundary.
  cplx orbit_prefactor(cplx z) const;

  /// prod_k (zeta - z_{2k+1}) / (zeta - z_{2k}) = P(z, zeta) * orbit_prefactor(z).
  cplx blaschke_F(cplx z, cplx zeta) const;

  /// P(z, zeta) itself (complex), with G1 = log|P|^2.
  cplx green_product(cplx z, cplx zeta) const;

  ReferenceKernels reference() const;

 private:
  void require_pair(cplx z, cplx zeta, const char* what) const;

  LensParams params_;
  KernelCoeffs coeffs_;
};

/// Green functions and Poisson kernels of the two half-domains bounded by a
/// single carrier circle: g0/p0 for the C0 side, g1/p1 for the unit disc.
struct ReferenceKernels {
  double sin_alpha, sin_theta, s_minus, s_plus;

  double g0(cplx z, cplx zeta) const;
  double p0(cplx z, cplx zeta) const;
  double g1(cplx z, cplx zeta) const;
  double p1(cplx z, cplx zeta) const;
};

}  // namespace lens
