#pragma once
// Conformal map of the lens onto the upper half-plane, used as an independent
// Green-function oracle and as the parametrization for area quadrature.
//
//   T(z)   = (z - e^{i alpha}) / (z - e^{-i alpha})     corners -> 0, infinity
//   s(z)   = rotation * T(z)                            D0 -> sector 0 < arg s < theta
//   phi(z) = s(z)^n                                     sector -> upper half-plane
//   q(z)   = log s(z) = u + i psi                       D0 -> strip 0 < psi < theta

#include "lens/domain.hpp"

namespace lens {

class SectorMap {
 public:
  /// Calibrates the rotation; throws lens::Error if no rotation places the
  /// interior probe inside the sector (cannot happen for valid params).
  explicit SectorMap(const LensParams& params);

  const LensParams& params() const { return params_; }
  cplx rotation() const { return rotation_; }

  /// s(z); throws at a corner.
  cplx to_sector(cplx z) const;
  /// phi(z) in the closed upper half-plane; throws at a corner.
  cplx map_to_halfplane(cplx z) const;

  /// Strip coordinate q = log s(z), 0 <= Im q <= theta on closure(D0).
  cplx to_strip(cplx z) const;
  struct StripPoint {
    cplx z;
    cplx dz_dq;
  };
  /// Inverse of to_strip together with its derivative.
  StripPoint from_strip(cplx q) const;
  /// Strip coordinate of z = infinity (pole of from_strip), Im in [0, 2 pi).
  cplx strip_pole() const;
  /// psi of the strip edge carrying C1 (0 or theta).
  double c1_edge() const { return c1_edge_; }

 private:
  cplx mobius(cplx z) const;

  LensParams params_;
  cplx rotation_;
  double c1_edge_;
};

/// Green function pulled back from the half-plane:
/// log |(phi(z) - conj phi(zeta)) / (phi(z) - phi(zeta))|^2.
double oracle_green(const SectorMap& map, cplx z, cplx zeta);

}  // namespace lens
