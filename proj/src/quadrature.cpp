#include "lens/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "lens/error.hpp"

namespace lens {
namespace {

constexpr double kPi = std::numbers::pi;

GaussRule compute_gauss(int m) {
  GaussRule r;
  r.x.resize(m);
  r.w.resize(m);
  for (int i = 0; i < (m + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (m + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= m; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (m == 1) p0 = 1.0, p1 = x;
      dp = m * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) <= 1e-16) break;
    }
    // recompute derivative at the converged node
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= m; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = m * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.x[i] = -x;
    r.x[m - 1 - i] = x;
    r.w[i] = w;
    r.w[m - 1 - i] = w;
  }
  if (m % 2 == 1) r.x[m / 2] = 0.0;
  return r;
}

/// Breakpoints of [lo, hi]: `panels` uniform panels, the end panels split
/// geometrically toward the ends, plus geometric refinement toward `focus`
/// down to width `scale`.
std::vector<double> graded_breaks(double lo, double hi, int panels, int corner_levels,
                                  double ratio, std::optional<std::pair<double, double>> focus) {
  std::vector<double> b;
  const double width = (hi - lo) / panels;
  for (int i = 0; i <= panels; ++i) b.push_back(lo + width * i);
  double g = ratio;
  for (int j = 0; j < corner_levels; ++j, g *= ratio) {
    b.push_back(lo + width * g);
    b.push_back(hi - width * g);
  }
  if (focus) {
    const auto [t, scale] = *focus;
    if (scale < width) {
      b.push_back(t);
      for (double h = std::max(scale, 1e-15 * (hi - lo)); h < width; h *= 2.0) {
        b.push_back(t - h);
        b.push_back(t + h);
      }
    }
  }
  std::sort(b.begin(), b.end());
  std::vector<double> out;
  const double tiny = 1e-14 * (hi - lo);
  for (double x : b) {
    if (x < lo || x > hi) continue;
    if (!out.empty() && x - out.back() <= tiny) continue;
    out.push_back(x);
  }
  if (out.back() != hi) out.back() = hi;
  return out;
}

/// Geometric breakpoints of [0, 1] toward s, down to width `scale`.
std::vector<double> edge_breaks(double s, double scale) {
  std::vector<double> b{0.0, 1.0};
  if (scale < 0.5) {
    b.push_back(s);
    for (double h = std::max(scale, 1e-14); h < 0.5; h *= 2.0) {
      b.push_back(s - h);
      b.push_back(s + h);
    }
  }
  std::sort(b.begin(), b.end());
  std::vector<double> out;
  for (double x : b) {
    if (x < 0.0 || x > 1.0) continue;
    if (!out.empty() && x - out.back() <= 1e-15) continue;
    out.push_back(x);
  }
  if (out.back() != 1.0) out.back() = 1.0;
  return out;
}

struct StripContext {
  const SectorMap& map;
  const GaussRule& rule;
  std::vector<cplx> poles;
  AreaRule& out;
  double pole_refinement = 1.0;

  void push(cplx q, double w) {
    const auto sp = map.from_strip(q);
    out.re.push_back(sp.z.real());
    out.im.push_back(sp.z.imag());
    out.w.push_back(w * std::norm(sp.dz_dq));
  }

  double pole_distance(double u0, double u1, double p0, double p1) const {
    double d = std::numeric_limits<double>::infinity();
    for (cplx q : poles) {
      const double du = std::max({u0 - q.real(), 0.0, q.real() - u1});
      const double dp = std::max({p0 - q.imag(), 0.0, q.imag() - p1});
      d = std::min(d, std::hypot(du, dp));
    }
    return d;
  }

  void rect(double u0, double u1, double p0, double p1, int depth = 0) {
    const double diam = std::hypot(u1 - u0, p1 - p0);
    if (depth < 20 && diam * pole_refinement > pole_distance(u0, u1, p0, p1)) {
      const double um = 0.5 * (u0 + u1);
      const double pm = 0.5 * (p0 + p1);
      rect(u0, um, p0, pm, depth + 1);
      rect(um, u1, p0, pm, depth + 1);
      rect(u0, um, pm, p1, depth + 1);
      rect(um, u1, pm, p1, depth + 1);
      return;
    }
    const double hu = 0.5 * (u1 - u0), cu = 0.5 * (u1 + u0);
    const double hp = 0.5 * (p1 - p0), cp = 0.5 * (p1 + p0);
    const std::size_t m = rule.x.size();
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        push({cu + hu * rule.x[i], cp + hp * rule.x[j]}, rule.w[i] * rule.w[j] * hu * hp);
      }
    }
  }
};

// Triangle (apex, a, b) with a log singularity at the apex.
void singular_triangle(StripContext& ctx, cplx apex, cplx a, cplx b, const GaussRule& radial,
                       const GaussRule& edge) {
  const cplx e = b - a;
  const cplx d = a - apex;
  const double jac = std::abs(d.real() * e.imag() - d.imag() * e.real());
  if (jac == 0.0) return;
  const double len2 = std::norm(e);
  const double s_foot = std::clamp(-(d.real() * e.real() + d.imag() * e.imag()) / len2, 0.0, 1.0);
  const double height = jac / std::sqrt(len2);
  const std::vector<double> br = edge_breaks(s_foot, height / std::sqrt(len2));
  for (std::size_t p = 0; p + 1 < br.size(); ++p) {
    const double hs = 0.5 * (br[p + 1] - br[p]), cs = 0.5 * (br[p + 1] + br[p]);
    for (std::size_t i = 0; i < edge.x.size(); ++i) {
      const double s = cs + hs * edge.x[i];
      const cplx ray = a + s * e - apex;
      for (std::size_t j = 0; j < radial.x.size(); ++j) {
        const double v = 0.5 * (radial.x[j] + 1.0);
        const double lambda = v * v * v;
        const double dlambda = 3.0 * v * v * 0.5 * radial.w[j];
        ctx.push(apex + lambda * ray, edge.w[i] * hs * dlambda * lambda * jac);
      }
    }
  }
}

}  // namespace

void QuadratureSpec::validate() const {
  if (gauss_order < 1 || boundary_panels < 1 || corner_levels < 0 || area_radial < 1 ||
      area_angular < 1 || area_panels < 0 || area_psi_panels < 1) {
    throw Error("quadrature spec: counts must be >= 1");
  }
  if (!(corner_grading > 0.0 && corner_grading < 1.0)) {
    throw Error("quadrature spec: corner_grading must lie in (0, 1)");
  }
  if (!(strip_halfwidth > 0.0) || !(epsilon_corner > 0.0) || !(pole_refinement > 0.0)) {
    throw Error("quadrature spec: strip_halfwidth, epsilon_corner and pole_refinement must be positive");
  }
}

const GaussRule& gauss_legendre(int order) {
  if (order < 1) throw Error("Gauss-Legendre order must be >= 1");
  static std::mutex mu;
  static std::map<int, std::unique_ptr<GaussRule>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[order];
  if (!slot) slot = std::make_unique<GaussRule>(compute_gauss(order));
  return *slot;
}

std::size_t BoundaryRule::size() const {
  std::size_t s = 0;
  for (const auto& a : arcs) s += a.size();
  return s;
}

BoundaryRule make_boundary_rule(const QuadratureSpec& spec, const LensParams& params,
                                std::optional<cplx> focus) {
  spec.validate();
  const GaussRule& g = gauss_legendre(spec.gauss_order);
  BoundaryRule rule;
  for (ArcId arc : {ArcId::C0, ArcId::C1}) {
    const auto [lo, hi] = parameter_range(params, arc);
    if (!(hi > lo)) continue;
    const double speed = parameter_speed(params, arc);
    std::optional<std::pair<double, double>> f;
    if (focus) {
      const auto [t, dist] = nearest_on_arc(params, arc, *focus);
      f = std::pair{t, dist / speed};
    }
    const std::vector<double> br =
        graded_breaks(lo, hi, spec.boundary_panels, spec.corner_levels, spec.corner_grading, f);
    ArcNodes nodes;
    nodes.arc = arc;
    for (std::size_t p = 0; p + 1 < br.size(); ++p) {
      const double h = 0.5 * (br[p + 1] - br[p]), c = 0.5 * (br[p + 1] + br[p]);
      for (std::size_t i = 0; i < g.x.size(); ++i) {
        const BoundaryPoint bp = boundary_param(params, arc, c + h * g.x[i]);
        nodes.t.push_back(bp.t);
        nodes.re.push_back(bp.point.real());
        nodes.im.push_back(bp.point.imag());
        nodes.arclen.push_back(bp.arclen);
        nodes.w.push_back(h * g.w[i] * speed);
      }
    }
    rule.arcs.push_back(std::move(nodes));
  }
  return rule;
}

AreaRule make_area_rule(const QuadratureSpec& spec, const SectorMap& map,
                        std::optional<cplx> singular_at) {
  spec.validate();
  const LensParams& params = map.params();
  const double theta = params.theta();
  AreaRule out;
  StripContext ctx{map, gauss_legendre(spec.gauss_order), {}, out, spec.pole_refinement};
  const cplx pole = map.strip_pole();
  for (int k = -1; k <= 1; ++k) ctx.poles.push_back(pole + cplx(0.0, 2.0 * kPi * k));

  // |z - corner| ~ 2 sin(alpha) e^{-|u|} at the strip ends
  double half = std::min(spec.strip_halfwidth,
                         std::log(2.0 * std::sin(params.alpha()) / (10.0 * spec.epsilon_corner)));
  std::optional<cplx> q0;
  if (singular_at) {
    if (classify(params, *singular_at) != Region::Interior) {
      throw Error("area quadrature: singular point must be interior");
    }
    q0 = map.to_strip(*singular_at);
    half = std::max(half, std::abs(q0->real()) + theta);
  }
  const int panels = spec.area_panels > 0
                         ? spec.area_panels
                         : static_cast<int>(std::ceil(2.0 * half / std::min(1.0, theta)));
  std::vector<double> ub;
  for (int i = 0; i <= panels; ++i) ub.push_back(-half + 2.0 * half * i / panels);
  const int npsi = spec.area_psi_panels;
  auto cover = [&](double u0, double u1) {
    for (int j = 0; j < npsi; ++j) ctx.rect(u0, u1, theta * j / npsi, theta * (j + 1) / npsi);
  };

  if (!q0) {
    for (std::size_t i = 0; i + 1 < ub.size(); ++i) cover(ub[i], ub[i + 1]);
    return out;
  }

  // the cell stays clear of the pole images of the inverse map
  const double pole_dist = ctx.pole_distance(q0->real(), q0->real(), q0->imag(), q0->imag());
  const double h = std::min(0.5 * theta, 0.25 * pole_dist);
  const double lo = q0->real() - h, hi = q0->real() + h;
  const double p0 = std::max(0.0, q0->imag() - h), p1 = std::min(theta, q0->imag() + h);
  std::vector<double> left, right;
  for (double u : ub) {
    if (u < lo) left.push_back(u);
    if (u > hi) right.push_back(u);
  }
  left.push_back(lo);
  right.insert(right.begin(), hi);
  for (std::size_t i = 0; i + 1 < left.size(); ++i) cover(left[i], left[i + 1]);
  for (std::size_t i = 0; i + 1 < right.size(); ++i) cover(right[i], right[i + 1]);
  if (p0 > 0.0) ctx.rect(lo, hi, 0.0, p0);
  if (p1 < theta) ctx.rect(lo, hi, p1, theta);

  const GaussRule& radial = gauss_legendre(spec.area_radial);
  const GaussRule& edge = gauss_legendre(spec.area_angular);
  const cplx corners[4] = {{lo, p0}, {hi, p0}, {hi, p1}, {lo, p1}};
  for (int i = 0; i < 4; ++i) singular_triangle(ctx, *q0, corners[i], corners[(i + 1) % 4], radial, edge);
  return out;
}

namespace {
double order_estimate(cplx v0, cplx v1, cplx v2) {
  const double d1 = std::abs(v1 - v0);
  const double d2 = std::abs(v2 - v1);
  if (d2 == 0.0) return std::numeric_limits<double>::infinity();
  return std::log2(d1 / d2);
}

std::vector<ConvergenceRow> finish_rows(std::vector<ConvergenceRow> rows) {
  for (std::size_t i = 2; i < rows.size(); ++i) {
    rows[i].order = order_estimate(rows[i - 2].value, rows[i - 1].value, rows[i].value);
  }
  return rows;
}
}  // namespace

std::vector<ConvergenceRow> convergence_report_boundary(
    const QuadratureSpec& spec, const LensParams& params,
    const std::function<cplx(const BoundaryPoint&)>& f, int refinements) {
  std::vector<ConvergenceRow> rows;
  QuadratureSpec s = spec;
  for (int r = 0; r <= refinements; ++r) {
    rows.push_back({s.boundary_panels, integrate_boundary(s, params, f),
                    std::numeric_limits<double>::quiet_NaN()});
    s.boundary_panels *= 2;
  }
  return finish_rows(std::move(rows));
}

std::vector<ConvergenceRow> convergence_report_area(const QuadratureSpec& spec,
                                                    const LensParams& params,
                                                    const std::function<cplx(cplx)>& f,
                                                    int refinements,
                                                    std::optional<cplx> singular_at) {
  std::vector<ConvergenceRow> rows;
  QuadratureSpec s = spec;
  if (s.area_panels == 0) {
    s.area_panels = static_cast<int>(std::ceil(2.0 * s.strip_halfwidth / std::min(1.0, params.theta())));
  }
  const SectorMap map(params);
  for (int r = 0; r <= refinements; ++r) {
    rows.push_back({s.area_panels, integrate_area(make_area_rule(s, map, singular_at), f),
                    std::numeric_limits<double>::quiet_NaN()});
    s.area_panels *= 2;
    s.area_psi_panels *= 2;
    s.pole_refinement *= 2.0;
  }
  return finish_rows(std::move(rows));
}

}  // namespace lens
