#include "lens/conformal.hpp"

#include <cmath>
#include <numbers>

#include "lens/error.hpp"

namespace lens {
namespace {
bool in_sector(cplx s, double theta) {
  const double a = std::arg(s);
  return a > 0.0 && a < theta;
}
}  // namespace

SectorMap::SectorMap(const LensParams& params) : params_(params), rotation_(1.0), c1_edge_(0.0) {
  const double theta = params.theta();
  const cplx t1 = mobius(cplx(1.0));  // midpoint of C1
  rotation_ = std::conj(t1) / std::abs(t1);
  const cplx probe = interior_probe(params);
  if (!in_sector(rotation_ * mobius(probe), theta)) {
    rotation_ *= std::polar(1.0, theta);
    c1_edge_ = theta;
  }
  if (!in_sector(rotation_ * mobius(probe), theta)) {
    throw Error("sector map calibration failed");
  }
}

cplx SectorMap::mobius(cplx z) const {
  return (z - params_.upper_corner()) / (z - params_.lower_corner());
}

cplx SectorMap::to_sector(cplx z) const {
  if (std::abs(z - params_.upper_corner()) < kCornerEps ||
      std::abs(z - params_.lower_corner()) < kCornerEps) {
    throw Error("conformal map: corner argument");
  }
  return rotation_ * mobius(z);
}

cplx SectorMap::map_to_halfplane(cplx z) const { return std::pow(to_sector(z), params_.n()); }

cplx SectorMap::to_strip(cplx z) const {
  cplx q = std::log(to_sector(z));
  // arg may come back as a tiny negative number on the psi = 0 edge
  if (q.imag() < -std::numbers::pi / 2) q += cplx(0.0, 2.0 * std::numbers::pi);
  return q;
}

SectorMap::StripPoint SectorMap::from_strip(cplx q) const {
  const cplx a = params_.upper_corner();
  const cplx ab = params_.lower_corner();
  const cplx t = std::exp(q) / rotation_;
  const cplx one_minus = 1.0 - t;
  const cplx z = (a - ab * t) / one_minus;
  const cplx dz_dt = (a - ab) / (one_minus * one_minus);
  return {z, dz_dt * t};
}

cplx SectorMap::strip_pole() const {
  // T(infinity) = 1
  double psi = std::arg(rotation_);
  if (psi < 0) psi += 2.0 * std::numbers::pi;
  return {0.0, psi};
}

double oracle_green(const SectorMap& map, cplx z, cplx zeta) {
  if (z == zeta) throw Error("oracle_green: logarithmic pole at z == zeta");
  const cplx pz = map.map_to_halfplane(z);
  const cplx pw = map.map_to_halfplane(zeta);
  return 2.0 * (std::log(std::abs(pz - std::conj(pw))) - std::log(std::abs(pz - pw)));
}

}  // namespace lens
