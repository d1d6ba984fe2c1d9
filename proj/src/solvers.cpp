#include "lens/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lens/batch.hpp"
#include "lens/error.hpp"
#include "lens/kernels.hpp"
#include "lens/parallel.hpp"

namespace lens {
namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI{0.0, 1.0};

cplx catalog_sum(const std::vector<CatalogTerm>& terms, cplx z) {
  cplx v = 0.0;
  for (const auto& t : terms) v += t.scale * catalog_value(t.kind, z);
  return v;
}

cplx interpolate(const std::vector<std::pair<double, cplx>>& s, double x) {
  if (x <= s.front().first) return s.front().second;
  if (x >= s.back().first) return s.back().second;
  auto it = std::upper_bound(s.begin(), s.end(), x,
                             [](double v, const std::pair<double, cplx>& e) { return v < e.first; });
  const auto& [x1, v1] = *it;
  const auto& [x0, v0] = *(it - 1);
  const double r = (x - x0) / (x1 - x0);
  return v0 + r * (v1 - v0);
}

std::string reject_reason(const LensParams& params, cplx z) {
  const Region r = classify(params, z);
  if (r != Region::Interior) return "point is not interior (" + to_string(r) + ")";
  return {};
}

// ∮ gamma K(z, .) ds with K supplied per arc by `kernel`.
template <class Kernel>
cplx boundary_sum(const LensParams& params, const BoundaryRule& rule, const BoundaryData& gamma,
                  Kernel&& kernel) {
  CompensatedSum<cplx> sum;
  std::vector<double> k;
  for (const ArcNodes& a : rule.arcs) {
    k.resize(a.size());
    kernel(a, std::span<double>(k));
    for (std::size_t j = 0; j < a.size(); ++j) sum.add(a.w[j] * k[j] * gamma(params, a.point(j)));
  }
  return sum.value();
}

cplx area_sum(const AreaRule& rule, const SourceTerm& f, std::span<const double> kernel) {
  CompensatedSum<cplx> sum;
  for (std::size_t j = 0; j < rule.size(); ++j) {
    sum.add(rule.w[j] * kernel[j] * f(cplx(rule.re[j], rule.im[j])));
  }
  return sum.value();
}

enum class Kind { Dirichlet, Neumann };

std::vector<PointSolution> solve(Kind kind, const LensParams& params, const QuadratureSpec& spec,
                                 const BoundaryData& gamma, const SourceTerm& f,
                                 const std::vector<cplx>& points) {
  spec.validate();
  const KernelField field(params);
  const SectorMap map(params);
  std::vector<PointSolution> out(points.size());
  parallel_for(points.size(), [&](std::size_t i) {
    const cplx z = points[i];
    out[i].z = z;
    out[i].error = reject_reason(params, z);
    if (!out[i].error.empty()) return;
    try {
      cplx w = 0.0;
      if (!gamma.is_zero()) {
        const BoundaryRule rule = make_boundary_rule(spec, params, z);
        const cplx b = boundary_sum(params, rule, gamma, [&](const ArcNodes& a, std::span<double> k) {
          const NodeView nodes{a.re, a.im};
          if (kind == Kind::Dirichlet) {
            poisson_batch(field, z, a.arc, nodes, k);
          } else {
            neumann_batch(field, z, nodes, k);
          }
        });
        w += b / (kind == Kind::Dirichlet ? 2.0 * kPi : 4.0 * kPi);
      }
      if (!f.is_zero()) {
        const AreaRule rule = make_area_rule(spec, map, z);
        std::vector<double> k(rule.size());
        const NodeView nodes{rule.re, rule.im};
        if (kind == Kind::Dirichlet) {
          green_batch(field, z, nodes, k);
        } else {
          neumann_batch(field, z, nodes, k);
        }
        w -= area_sum(rule, f, k) / kPi;
      }
      out[i].w = w;
    } catch (const Error& e) {
      out[i].error = e.what();
    }
  });
  return out;
}

}  // namespace

const std::vector<std::string>& catalog_kinds() {
  static const std::vector<std::string> kinds{"const", "re",    "im",    "re_z2",
                                              "im_z2", "re_z3", "im_z3", "abs2"};
  return kinds;
}

bool is_catalog_kind(const std::string& kind) {
  const auto& k = catalog_kinds();
  return std::find(k.begin(), k.end(), kind) != k.end();
}

double catalog_value(const std::string& kind, cplx z) {
  if (kind == "const") return 1.0;
  if (kind == "re") return z.real();
  if (kind == "im") return z.imag();
  if (kind == "re_z2") return (z * z).real();
  if (kind == "im_z2") return (z * z).imag();
  if (kind == "re_z3") return (z * z * z).real();
  if (kind == "im_z3") return (z * z * z).imag();
  if (kind == "abs2") return std::norm(z);
  throw Error("unknown data kind '" + kind + "'");
}

std::pair<cplx, cplx> catalog_gradient(const std::string& kind, cplx z) {
  const cplx zb = std::conj(z);
  if (kind == "const") return {0.0, 0.0};
  if (kind == "re") return {0.5, 0.5};
  if (kind == "im") return {-0.5 * kI, 0.5 * kI};
  if (kind == "re_z2") return {z, zb};
  if (kind == "im_z2") return {-kI * z, kI * zb};
  if (kind == "re_z3") return {1.5 * z * z, 1.5 * zb * zb};
  if (kind == "im_z3") return {-1.5 * kI * z * z, 1.5 * kI * zb * zb};
  if (kind == "abs2") return {zb, z};
  throw Error("unknown data kind '" + kind + "'");
}

BoundaryData BoundaryData::catalog(const std::string& kind, cplx scale) {
  BoundaryData d;
  d.add({kind, scale, false});
  return d;
}

BoundaryData BoundaryData::normal_derivative(const std::string& kind, cplx scale) {
  BoundaryData d;
  d.add({kind, scale, true});
  return d;
}

BoundaryData& BoundaryData::add(CatalogTerm term) {
  if (!is_catalog_kind(term.kind)) throw Error("unknown data kind '" + term.kind + "'");
  terms_.push_back(std::move(term));
  return *this;
}

BoundaryData& BoundaryData::set_samples(ArcId arc, std::vector<std::pair<double, cplx>> samples) {
  if (samples.empty()) throw Error("boundary samples: empty list for " + to_string(arc));
  std::sort(samples.begin(), samples.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t i = 1; i < samples.size(); ++i) {
    if (samples[i].first == samples[i - 1].first) {
      throw Error("boundary samples: repeated arclen on " + to_string(arc));
    }
  }
  samples_[arc] = std::move(samples);
  return *this;
}

cplx BoundaryData::operator()(const LensParams& params, const BoundaryPoint& p) const {
  cplx v = 0.0;
  for (const auto& t : terms_) {
    if (t.normal_derivative) {
      const auto [cz, czb] = outward_normal_coeffs(params, p);
      const auto [dz, dzb] = catalog_gradient(t.kind, p.point);
      v += t.scale * (cz * dz + czb * dzb);
    } else {
      v += t.scale * catalog_value(t.kind, p.point);
    }
  }
  if (auto it = samples_.find(p.arc); it != samples_.end()) v += interpolate(it->second, p.arclen);
  return v;
}

cplx GridSamples::operator()(cplx z) const {
  auto locate = [](double v, double lo, double hi, int count, int& cell) {
    const double s = std::clamp((v - lo) / (hi - lo), 0.0, 1.0) * (count - 1);
    cell = std::min(static_cast<int>(s), count - 2);
    return s - cell;
  };
  int i = 0, j = 0;
  const double rx = locate(z.real(), x0, x1, nx, i);
  const double ry = locate(z.imag(), y0, y1, ny, j);
  auto at = [&](int a, int b) { return values[static_cast<std::size_t>(b) * nx + a]; };
  return (1 - ry) * ((1 - rx) * at(i, j) + rx * at(i + 1, j)) +
         ry * ((1 - rx) * at(i, j + 1) + rx * at(i + 1, j + 1));
}

SourceTerm SourceTerm::catalog(const std::string& kind, cplx scale) {
  SourceTerm s;
  s.add({kind, scale, false});
  return s;
}

SourceTerm& SourceTerm::add(CatalogTerm term) {
  if (!is_catalog_kind(term.kind)) throw Error("unknown data kind '" + term.kind + "'");
  if (term.normal_derivative) throw Error("source term: normal derivative is boundary-only");
  terms_.push_back(std::move(term));
  return *this;
}

SourceTerm& SourceTerm::set_grid(GridSamples grid) {
  if (grid.nx < 2 || grid.ny < 2) throw Error("source grid: need at least 2 x 2 nodes");
  if (!(grid.x1 > grid.x0) || !(grid.y1 > grid.y0)) throw Error("source grid: empty box");
  if (grid.values.size() != static_cast<std::size_t>(grid.nx) * grid.ny) {
    throw Error("source grid: expected nx * ny values");
  }
  grid_ = std::move(grid);
  return *this;
}

cplx SourceTerm::operator()(cplx z) const {
  cplx v = catalog_sum(terms_, z);
  if (grid_) v += (*grid_)(z);
  return v;
}

std::vector<PointSolution> solve_dirichlet(const LensParams& params, const QuadratureSpec& spec,
                                           const BoundaryData& gamma, const SourceTerm& f,
                                           const std::vector<cplx>& points) {
  return solve(Kind::Dirichlet, params, spec, gamma, f, points);
}

Solvability check_neumann_solvability(const LensParams& params, const QuadratureSpec& spec,
                                      const BoundaryData& gamma, const SourceTerm& f) {
  Solvability s{};
  if (!gamma.is_zero()) {
    s.lhs = integrate_boundary(spec, params, [&](const BoundaryPoint& p) { return gamma(params, p); });
  }
  if (!f.is_zero()) s.rhs = 4.0 * integrate_area(spec, params, [&](cplx z) { return f(z); });
  s.defect = std::abs(s.lhs - s.rhs);
  s.satisfied = s.defect <= kSolvabilityTol * (1.0 + std::abs(s.lhs) + std::abs(s.rhs));
  return s;
}

std::vector<PointSolution> solve_neumann(const LensParams& params, const QuadratureSpec& spec,
                                         const BoundaryData& gamma, const SourceTerm& f,
                                         const std::vector<cplx>& points) {
  const Solvability s = check_neumann_solvability(params, spec, gamma, f);
  if (!s.satisfied) {
    throw SolvabilityError("Neumann data violate the solvability condition: defect " +
                               std::to_string(s.defect),
                           s.defect);
  }
  return solve(Kind::Neumann, params, spec, gamma, f, points);
}

DensityMomentProbe probe_density_moment(const LensParams& params, const QuadratureSpec& spec,
                                        const std::vector<cplx>& zetas) {
  const KernelField field(params);
  DensityMomentProbe probe;
  probe.values.resize(zetas.size());
  parallel_for(zetas.size(), [&](std::size_t i) {
    const cplx zeta = zetas[i];
    if (const std::string why = reject_reason(params, zeta); !why.empty()) {
      throw Error("density moment probe: " + why);
    }
    const BoundaryRule rule = make_boundary_rule(spec, params, zeta);
    CompensatedSum<double> sum;
    std::vector<double> k;
    for (const ArcNodes& a : rule.arcs) {
      k.resize(a.size());
      neumann_batch(field, zeta, NodeView{a.re, a.im}, k);
      const double sigma = field.sigma(a.arc);
      for (std::size_t j = 0; j < a.size(); ++j) sum.add(a.w[j] * sigma * k[j]);
    }
    probe.values[i] = sum.value();
  });
  if (!probe.values.empty()) {
    const auto [lo, hi] = std::minmax_element(probe.values.begin(), probe.values.end());
    probe.spread = *hi - *lo;
  } else {
    probe.spread = 0.0;
  }
  return probe;
}

}  // namespace lens
