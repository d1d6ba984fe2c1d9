#pragma once
// Boundary and area quadrature on the lens.
//
// Boundary: composite Gauss-Legendre in the native arc parameter, panels
// graded geometrically toward both corners and, when a focus point is given,
// toward the boundary point nearest to it.
//
// Area: D0 is the image of the strip 0 < psi < theta under the inverse of
// q = log s(z) (see conformal.hpp). The truncated strip |u| <= L is covered by
// tensor Gauss panels, refined near the image of z = infinity; L is capped so
// nodes stay 10 epsilon_corner away from the corners. A logarithmic singularity
// at z0 is isolated in a strip cell around q0 (half-width theta/2, less near
// the pole image) split into four triangles with apex q0 and integrated in
// (radial, edge) coordinates with radial substitution lambda = v^3.

#include <complex>
#include <functional>
#include <optional>
#include <type_traits>
#include <utility>
#include <vector>

#include "lens/conformal.hpp"
#include "lens/domain.hpp"

namespace lens {

struct QuadratureSpec {
  int gauss_order = 16;          // nodes per boundary panel and per strip panel direction
  int boundary_panels = 8;       // uniform panels per arc before grading
  int corner_levels = 8;         // graded panels toward each corner
  double corner_grading = 0.5;   // ratio of successive graded panels
  int area_radial = 24;          // radial nodes in the singular triangles
  int area_angular = 16;         // nodes per edge panel in the singular triangles
  int area_panels = 0;           // strip panels along u; 0 picks ceil(2L / min(1, theta))
  int area_psi_panels = 1;       // strip panels across psi
  double pole_refinement = 1.0;  // strip cells near a pole image split until diam * this <= distance
  double strip_halfwidth = 18.0; // L
  double epsilon_corner = kCornerEps;

  /// Throws lens::Error on counts < 1 or grading outside (0, 1).
  void validate() const;
};

/// Gauss-Legendre nodes and weights on [-1, 1]; cached per order.
struct GaussRule {
  std::vector<double> x, w;
};
const GaussRule& gauss_legendre(int order);

/// Neumaier-compensated running sum; order of additions fixes the result.
template <class T>
class CompensatedSum {
 public:
  void add(T v) {
    if constexpr (std::is_same_v<T, double>) {
      add_real(sum_, comp_, v);
    } else {
      double sr = sum_.real(), cr = comp_.real(), si = sum_.imag(), ci = comp_.imag();
      add_real(sr, cr, v.real());
      add_real(si, ci, v.imag());
      sum_ = {sr, si};
      comp_ = {cr, ci};
    }
  }
  T value() const { return sum_ + comp_; }

 private:
  static void add_real(double& s, double& c, double v) {
    const double t = s + v;
    c += std::abs(s) >= std::abs(v) ? (s - t) + v : (v - t) + s;
    s = t;
  }
  T sum_{};
  T comp_{};
};

struct ArcNodes {
  ArcId arc;
  std::vector<double> t, re, im, w, arclen;
  std::size_t size() const { return t.size(); }
  BoundaryPoint point(std::size_t j) const { return {arc, t[j], {re[j], im[j]}, arclen[j]}; }
};

struct BoundaryRule {
  std::vector<ArcNodes> arcs;  // C0 then C1
  std::size_t size() const;
};

BoundaryRule make_boundary_rule(const QuadratureSpec& spec, const LensParams& params,
                                std::optional<cplx> focus = std::nullopt);

struct AreaRule {
  std::vector<double> re, im, w;
  std::size_t size() const { return w.size(); }
};

/// Throws lens::Error if singular_at is not an interior point.
AreaRule make_area_rule(const QuadratureSpec& spec, const SectorMap& map,
                        std::optional<cplx> singular_at = std::nullopt);

template <class F>
auto integrate_boundary(const BoundaryRule& rule, F&& f) {
  using T = decltype(f(std::declval<const BoundaryPoint&>()));
  CompensatedSum<T> sum;
  for (const ArcNodes& a : rule.arcs) {
    for (std::size_t j = 0; j < a.size(); ++j) sum.add(a.w[j] * f(a.point(j)));
  }
  return sum.value();
}

template <class F>
auto integrate_boundary(const QuadratureSpec& spec, const LensParams& params, F&& f,
                        std::optional<cplx> focus = std::nullopt) {
  return integrate_boundary(make_boundary_rule(spec, params, focus), std::forward<F>(f));
}

template <class F>
auto integrate_area(const AreaRule& rule, F&& f) {
  using T = decltype(f(cplx{}));
  CompensatedSum<T> sum;
  for (std::size_t j = 0; j < rule.size(); ++j) sum.add(rule.w[j] * f(cplx(rule.re[j], rule.im[j])));
  return sum.value();
}

template <class F>
auto integrate_area(const QuadratureSpec& spec, const LensParams& params, F&& f,
                    std::optional<cplx> singular_at = std::nullopt) {
  return integrate_area(make_area_rule(spec, SectorMap(params), singular_at), std::forward<F>(f));
}

struct ConvergenceRow {
  int resolution;  // panels per arc (boundary) or strip panels along u (area)
  cplx value;
  double order;    // NaN until three rows exist
};

/// Repeats a boundary integral with the panel count doubled `refinements` times.
std::vector<ConvergenceRow> convergence_report_boundary(
    const QuadratureSpec& spec, const LensParams& params,
    const std::function<cplx(const BoundaryPoint&)>& f, int refinements);

/// Same for an area integral; both strip directions are refined together.
std::vector<ConvergenceRow> convergence_report_area(const QuadratureSpec& spec,
                                                    const LensParams& params,
                                                    const std::function<cplx(cplx)>& f,
                                                    int refinements,
                                                    std::optional<cplx> singular_at = std::nullopt);

}  // namespace lens
