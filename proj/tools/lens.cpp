// lens: command-line front end for the lens-domain kernels and solvers.
//
//   lens parquet  --alpha A --n N [--sample re,im]
//   lens green    --alpha A --n N --zeta re,im --grid NX,NY
//   lens neumann  --alpha A --n N --zeta re,im --grid NX,NY
//   lens poisson  --alpha A --n N --z re,im --samples M
//   lens solve-dirichlet --problem file.json
//   lens solve-neumann   --problem file.json [--pin re,im=v]
//   lens validate --alpha A --n N [--quick]
//
// --alpha-pi P/Q may replace --alpha. Exit codes: 0 ok, 1 solver or
// validation failure, 2 bad arguments.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lens/batch.hpp"
#include "lens/error.hpp"
#include "lens/io.hpp"
#include "lens/kernels.hpp"
#include "lens/solvers.hpp"
#include "lens/validate.hpp"

namespace {

using lens::cplx;
using lens::io::format_double;

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct UsageError : lens::Error {
  using lens::Error::Error;
};

struct ParamArgs {
  std::optional<double> alpha;
  std::optional<std::string> alpha_pi;
  std::optional<int> n;

  void attach(CLI::App* app) {
    auto* a = app->add_option("--alpha", alpha, "corner half-angle alpha in radians");
    auto* ap = app->add_option("--alpha-pi", alpha_pi, "alpha as a rational multiple of pi, P/Q");
    a->excludes(ap);
    app->add_option("--n", n, "theta = pi / n")->required();
  }

  lens::LensParams build() const {
    try {
      if (alpha_pi) {
        const auto [p, q] = lens::io::parse_pi_fraction(*alpha_pi);
        return lens::LensParams::from_pi_fraction(p, q, *n);
      }
      if (!alpha) throw lens::Error("one of --alpha or --alpha-pi is required");
      return lens::LensParams(*alpha, *n);
    } catch (const lens::Error& e) {
      throw UsageError(e.what());
    }
  }
};

cplx complex_arg(const std::string& text, const char* flag) {
  try {
    return lens::io::parse_complex(text);
  } catch (const lens::Error& e) {
    throw UsageError(std::string(flag) + ": " + e.what());
  }
}

std::pair<int, int> grid_arg(const std::string& text) {
  const cplx g = complex_arg(text, "--grid");
  const int nx = static_cast<int>(g.real()), ny = static_cast<int>(g.imag());
  if (nx < 1 || ny < 1 || nx != g.real() || ny != g.imag()) throw UsageError("--grid: expected NX,NY >= 1");
  return {nx, ny};
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw UsageError("cannot open output file '" + path + "'");
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

std::string value_or_empty(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

int run_parquet(const ParamArgs& pa, const std::optional<std::string>& sample, const std::string& out_path) {
  const lens::LensParams params = pa.build();
  std::optional<cplx> z;
  if (sample) z = complex_arg(*sample, "--sample");
  const auto j = lens::io::parquet_json(params, z);
  Output out(out_path);
  out.stream() << j.dump(2) << '\n';
  return 0;
}

int run_grid(bool neumann, const ParamArgs& pa, const std::string& zeta_text, const std::string& grid_text,
             const std::string& out_path) {
  const lens::LensParams params = pa.build();
  const cplx zeta = complex_arg(zeta_text, "--zeta");
  const auto [nx, ny] = grid_arg(grid_text);
  const lens::Region where = lens::classify(params, zeta);
  if (where == lens::Region::Exterior || where == lens::Region::Corner) {
    throw UsageError("--zeta must lie in the closed domain away from the corners (got " + lens::to_string(where) + ")");
  }
  const lens::KernelField field(params);
  const lens::Box box = lens::bounding_box(params);

  std::vector<double> re, im;
  std::vector<std::size_t> slot;
  std::vector<std::optional<double>> values(static_cast<std::size_t>(nx) * ny);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const cplx z(box.x0 + (i + 0.5) * (box.x1 - box.x0) / nx, box.y0 + (j + 0.5) * (box.y1 - box.y0) / ny);
      const lens::Region r = lens::classify(params, z);
      if (r == lens::Region::Exterior || r == lens::Region::Corner || z == zeta) continue;
      re.push_back(z.real());
      im.push_back(z.imag());
      slot.push_back(static_cast<std::size_t>(j) * nx + i);
    }
  }
  std::vector<double> k(re.size());
  const lens::NodeView nodes{re, im};
  if (neumann) {
    lens::neumann_batch(field, zeta, nodes, k);
  } else {
    lens::green_batch(field, zeta, nodes, k);
  }
  for (std::size_t m = 0; m < slot.size(); ++m) values[slot[m]] = k[m];

  Output out(out_path);
  lens::io::write_csv_row(out.stream(), {"x", "y", "value"});
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const double x = box.x0 + (i + 0.5) * (box.x1 - box.x0) / nx;
      const double y = box.y0 + (j + 0.5) * (box.y1 - box.y0) / ny;
      lens::io::write_csv_row(out.stream(), {format_double(x), format_double(y),
                                             value_or_empty(values[static_cast<std::size_t>(j) * nx + i])});
    }
  }
  return 0;
}

int run_poisson(const ParamArgs& pa, const std::string& z_text, int samples, const std::string& out_path) {
  const lens::LensParams params = pa.build();
  const cplx z = complex_arg(z_text, "--z");
  if (samples < 1) throw UsageError("--samples must be >= 1");
  const lens::Region where = lens::classify(params, z);
  if (where == lens::Region::Exterior || where == lens::Region::Corner) {
    throw UsageError("--z must lie in the closed domain away from the corners (got " + lens::to_string(where) + ")");
  }
  const lens::KernelField field(params);
  Output out(out_path);
  lens::io::write_csv_row(out.stream(), {"arc", "t", "arclen", "x", "y", "p"});
  for (lens::ArcId arc : {lens::ArcId::C0, lens::ArcId::C1}) {
    const auto [lo, hi] = lens::parameter_range(params, arc);
    if (!(hi > lo)) continue;
    for (int i = 0; i < samples; ++i) {
      const lens::BoundaryPoint bp = lens::boundary_param(params, arc, lo + (hi - lo) * (i + 0.5) / samples);
      std::string value;
      if (bp.point != z) value = format_double(field.poisson(z, bp));
      lens::io::write_csv_row(out.stream(), {lens::to_string(arc), format_double(bp.t), format_double(bp.arclen),
                                             format_double(bp.point.real()), format_double(bp.point.imag()), value});
    }
  }
  return 0;
}

struct Pin {
  cplx z;
  cplx value;
};

Pin pin_arg(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) throw UsageError("--pin: expected re,im=v");
  const cplx z = complex_arg(text.substr(0, eq), "--pin");
  const std::string v = text.substr(eq + 1);
  if (v.find(',') != std::string::npos) return {z, complex_arg(v, "--pin")};
  try {
    return {z, lens::io::parse_complex(v + ",0")};
  } catch (const lens::Error& e) {
    throw UsageError(std::string("--pin: ") + e.what());
  }
}

int run_solve(bool neumann, const std::string& problem_path, const std::optional<std::string>& pin_text,
              const std::string& out_path) {
  lens::io::Problem prob = [&] {
    try {
      return lens::io::load_problem(problem_path);
    } catch (const lens::Error& e) {
      throw UsageError(e.what());
    }
  }();
  std::optional<Pin> pin;
  if (pin_text) {
    if (!neumann) throw UsageError("--pin applies to solve-neumann only");
    pin = pin_arg(*pin_text);
  }
  std::vector<cplx> points = prob.points;
  if (pin) points.push_back(pin->z);

  std::vector<lens::PointSolution> sol;
  if (neumann) {
    const lens::Solvability s = lens::check_neumann_solvability(prob.params, prob.spec, prob.gamma, prob.f);
    if (!s.satisfied) {
      std::cerr << "error: Neumann solvability condition violated: ∮ gamma ds = " << format_double(s.lhs.real())
                << (s.lhs.imag() != 0 ? "+" + format_double(s.lhs.imag()) + "i" : "") << ", 4 ∬ f dA = "
                << format_double(s.rhs.real()) << (s.rhs.imag() != 0 ? "+" + format_double(s.rhs.imag()) + "i" : "")
                << ", defect " << format_double(s.defect) << '\n';
      return kExitFailure;
    }
    sol = lens::solve_neumann(prob.params, prob.spec, prob.gamma, prob.f, points);
  } else {
    sol = lens::solve_dirichlet(prob.params, prob.spec, prob.gamma, prob.f, points);
  }

  cplx shift = 0.0;
  if (pin) {
    const lens::PointSolution anchor = sol.back();
    sol.pop_back();
    if (!anchor.w) {
      std::cerr << "error: --pin point rejected: " << anchor.error << '\n';
      return kExitFailure;
    }
    shift = pin->value - *anchor.w;
  }

  bool failed = false;
  Output out(out_path);
  lens::io::write_csv_row(out.stream(), {"point_re", "point_im", "w_re", "w_im"});
  for (const auto& r : sol) {
    std::string wr, wi;
    if (r.w) {
      wr = format_double((*r.w + shift).real());
      wi = format_double((*r.w + shift).imag());
    } else {
      failed = true;
      std::cerr << "error: point " << format_double(r.z.real()) << "," << format_double(r.z.imag()) << ": "
                << r.error << '\n';
    }
    lens::io::write_csv_row(out.stream(), {format_double(r.z.real()), format_double(r.z.imag()), wr, wi});
  }
  return failed ? kExitFailure : 0;
}

int run_validate(const ParamArgs& pa, bool quick) {
  const lens::LensParams params = pa.build();
  const lens::ValidationReport report = lens::run_validation(params, quick);
  lens::print_report(std::cout, params, report);
  return report.ok() ? 0 : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Green and Neumann functions of a two-arc lens domain"};
  app.require_subcommand(1);
  std::string simd = "auto";
  app.add_option("--simd", simd, "kernel variant: auto, scalar, avx2")
      ->check(CLI::IsMember({"auto", "scalar", "avx2"}));

  ParamArgs pq, pg, pn, pp, pv;
  std::string out_path;
  std::optional<std::string> sample, pin;
  std::string zeta, grid, zpoint, problem;
  int samples = 0;
  bool quick = false;

  auto* parquet = app.add_subcommand("parquet", "arc matrices, corners and reflection orbit as JSON");
  pq.attach(parquet);
  parquet->add_option("--sample", sample, "point re,im whose orbit is listed");
  parquet->add_option("-o,--output", out_path, "output file (default stdout)");

  auto* green = app.add_subcommand("green", "G1(z, zeta) on a grid, CSV");
  pg.attach(green);
  green->add_option("--zeta", zeta, "re,im")->required();
  green->add_option("--grid", grid, "NX,NY")->required();
  green->add_option("-o,--output", out_path, "output file (default stdout)");

  auto* neumann = app.add_subcommand("neumann", "N1(z, zeta) on a grid, CSV");
  pn.attach(neumann);
  neumann->add_option("--zeta", zeta, "re,im")->required();
  neumann->add_option("--grid", grid, "NX,NY")->required();
  neumann->add_option("-o,--output", out_path, "output file (default stdout)");

  auto* poisson = app.add_subcommand("poisson", "Poisson kernel along both arcs, CSV");
  pp.attach(poisson);
  poisson->add_option("--z", zpoint, "re,im")->required();
  poisson->add_option("--samples", samples, "samples per arc")->required();
  poisson->add_option("-o,--output", out_path, "output file (default stdout)");

  auto* sd = app.add_subcommand("solve-dirichlet", "Dirichlet problem from a JSON problem file");
  sd->add_option("--problem", problem, "problem file")->required();
  sd->add_option("-o,--output", out_path, "output file (default stdout)");

  auto* sn = app.add_subcommand("solve-neumann", "Neumann problem from a JSON problem file");
  sn->add_option("--problem", problem, "problem file")->required();
  sn->add_option("--pin", pin, "fix the additive constant: re,im=v");
  sn->add_option("-o,--output", out_path, "output file (default stdout)");

  auto* validate = app.add_subcommand("validate", "invariant suite");
  pv.attach(validate);
  validate->add_flag("--quick", quick, "fewer samples");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (simd == "scalar") lens::set_simd_level(lens::SimdLevel::Scalar);
  if (simd == "avx2") lens::set_simd_level(lens::SimdLevel::Avx2);

  try {
    if (*parquet) return run_parquet(pq, sample, out_path);
    if (*green) return run_grid(false, pg, zeta, grid, out_path);
    if (*neumann) return run_grid(true, pn, zeta, grid, out_path);
    if (*poisson) return run_poisson(pp, zpoint, samples, out_path);
    if (*sd) return run_solve(false, problem, std::nullopt, out_path);
    if (*sn) return run_solve(true, problem, pin, out_path);
    if (*validate) return run_validate(pv, quick);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}
