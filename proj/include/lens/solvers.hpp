#pragma once
// Dirichlet and Neumann problems for w_{z conj z} = f on D0 through the
// representation formulas
//
//   Dirichlet:  w(z) = 1/(2 pi) ∮ gamma p ds - 1/pi ∬ f G1 dA
//   Neumann:    w(z) = c + 1/(4 pi) ∮ gamma N1 ds - 1/pi ∬ f N1 dA,
//               solvable iff ∮ gamma ds = 4 ∬ f dA.
//
// Data are catalog expressions, sums of them, or tabulated samples.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lens/quadrature.hpp"

namespace lens {

/// Catalog of closed-form data: const, re, im, re_z2, im_z2, re_z3, im_z3, abs2.
bool is_catalog_kind(const std::string& kind);
const std::vector<std::string>& catalog_kinds();
/// Value of a catalog function at z; throws lens::Error on an unknown kind.
double catalog_value(const std::string& kind, cplx z);
/// (d/dz, d/dconj(z)) of a catalog function.
std::pair<cplx, cplx> catalog_gradient(const std::string& kind, cplx z);

struct CatalogTerm {
  std::string kind;
  cplx scale{1.0, 0.0};
  bool normal_derivative = false;  // boundary data only: outward normal derivative of the function
};

class BoundaryData {
 public:
  BoundaryData() = default;  // gamma == 0
  static BoundaryData catalog(const std::string& kind, cplx scale = 1.0);
  /// gamma = d/dnu of the catalog function.
  static BoundaryData normal_derivative(const std::string& kind, cplx scale = 1.0);

  BoundaryData& add(CatalogTerm term);
  /// (arclen, value) samples on one arc, interpolated piecewise linearly and
  /// held constant beyond the first and last sample. Replaces earlier samples on that arc.
  BoundaryData& set_samples(ArcId arc, std::vector<std::pair<double, cplx>> samples);

  cplx operator()(const LensParams& params, const BoundaryPoint& p) const;
  bool is_zero() const { return terms_.empty() && samples_.empty(); }
  const std::vector<CatalogTerm>& terms() const { return terms_; }

 private:
  std::vector<CatalogTerm> terms_;
  std::map<ArcId, std::vector<std::pair<double, cplx>>> samples_;
};

/// Values on a uniform node grid over [x0, x1] x [y0, y1], row-major in y,
/// bilinearly interpolated; clamped outside the box.
struct GridSamples {
  double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  int nx = 2, ny = 2;
  std::vector<cplx> values;

  cplx operator()(cplx z) const;
};

class SourceTerm {
 public:
  SourceTerm() = default;  // f == 0
  static SourceTerm catalog(const std::string& kind, cplx scale = 1.0);

  SourceTerm& add(CatalogTerm term);
  SourceTerm& set_grid(GridSamples grid);

  cplx operator()(cplx z) const;
  bool is_zero() const { return terms_.empty() && !grid_; }

 private:
  std::vector<CatalogTerm> terms_;
  std::optional<GridSamples> grid_;
};

struct PointSolution {
  cplx z;
  std::optional<cplx> w;  // empty when the point was rejected
  std::string error;
};

/// Points must be interior; others get an error entry instead of a value.
std::vector<PointSolution> solve_dirichlet(const LensParams& params, const QuadratureSpec& spec,
                                           const BoundaryData& gamma, const SourceTerm& f,
                                           const std::vector<cplx>& points);

struct Solvability {
  bool satisfied;
  cplx lhs;  // ∮ gamma ds
  cplx rhs;  // 4 ∬ f dA
  double defect;
};

inline constexpr double kSolvabilityTol = 1e-8;

Solvability check_neumann_solvability(const LensParams& params, const QuadratureSpec& spec,
                                      const BoundaryData& gamma, const SourceTerm& f);

/// The c = 0 representative. Throws SolvabilityError when the data are incompatible.
std::vector<PointSolution> solve_neumann(const LensParams& params, const QuadratureSpec& spec,
                                         const BoundaryData& gamma, const SourceTerm& f,
                                         const std::vector<cplx>& points);

struct DensityMomentProbe {
  std::vector<double> values;  // ∮ sigma(z) N1(z, zeta) ds_z per zeta
  double spread;               // max - min
};

/// Throws lens::Error for non-interior zeta.
DensityMomentProbe probe_density_moment(const LensParams& params, const QuadratureSpec& spec,
                           const std::vector<cplx>& zetas);

}  // namespace lens
