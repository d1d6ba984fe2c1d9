#pragma once
// Per-point kernel formulas shared by KernelField and the scalar batch path.

#include <cmath>
#include <complex>

#include "lens/kernels.hpp"

namespace lens::detail {

// k = 0 factors are written as (conj(z) zeta - 1) sin(alpha) and
// (z - zeta) sin(alpha) so that z - zeta is formed before rounding.
// T = long double is used where a factor is evaluated next to its zero set.
template <class T>
std::complex<T> num_k_t(const KernelCoeffs& c, int k, cplx z0, cplx zeta0) {
  using C = std::complex<T>;
  const C zb(z0.real(), -z0.imag());
  const C zeta(zeta0);
  if (k == 0) return (zb * zeta - T(1)) * T(c.sp[0]);
  return zb * zeta * T(c.sp[k]) - (zb + zeta) * T(c.sk[k]) - T(c.sm[k]);
}

template <class T>
std::complex<T> den_k_t(const KernelCoeffs& c, int k, cplx z0, cplx zeta0) {
  using C = std::complex<T>;
  const C z(z0);
  const C zeta(zeta0);
  if (k == 0) return (z - zeta) * T(c.sm[0]);
  return z * zeta * T(c.sk[k]) + z * T(c.sm[k]) - zeta * T(c.sp[k]) + T(c.sk[k]);
}

inline cplx num_k(const KernelCoeffs& c, int k, cplx z, cplx zeta) { return num_k_t<double>(c, k, z, zeta); }
inline cplx den_k(const KernelCoeffs& c, int k, cplx z, cplx zeta) { return den_k_t<double>(c, k, z, zeta); }

inline double green_ref(const KernelCoeffs& c, int n, cplx z, cplx zeta) {
  double s = 0.0;
  for (int k = 0; k < n; ++k) {
    s += std::log(std::abs(num_k(c, k, z, zeta))) - std::log(std::abs(den_k(c, k, z, zeta)));
  }
  return 2.0 * s;
}

inline double neumann_ref(const KernelCoeffs& c, int n, cplx z, cplx zeta) {
  double s = 0.0;
  for (int k = 0; k < n; ++k) {
    s += std::log(std::abs(num_k(c, k, z, zeta))) + std::log(std::abs(den_k(c, k, z, zeta)));
  }
  return -2.0 * s;
}

/// Constant numerators of the Poisson kernel sums for fixed z.
inline cplx poisson_c0_numer(const KernelCoeffs& c, int k, cplx z) { return z * c.sm1[k] + c.sk1[k]; }
inline cplx poisson_c1_numer(const KernelCoeffs& c, int k, cplx z) { return z * c.sm[k] + c.sk[k]; }

inline double poisson_c0_offset(const KernelCoeffs& c, int n) {
  return -static_cast<double>(n) * c.s_minus / c.sin_alpha;
}

inline double poisson_ref(const KernelCoeffs& c, int n, cplx z, cplx zeta, bool on_c0) {
  double s = 0.0;
  for (int k = 0; k < n; ++k) {
    const cplx numer = on_c0 ? poisson_c0_numer(c, k, z) : poisson_c1_numer(c, k, z);
    s += (numer / den_k(c, k, z, zeta)).real();
  }
  return on_c0 ? poisson_c0_offset(c, n) + 2.0 * s : static_cast<double>(n) - 2.0 * s;
}

}  // namespace lens::detail
