#include <doctest.h>

#include <cmath>

#include "lens/conformal.hpp"
#include "lens/error.hpp"
#include "lens/kernels.hpp"
#include "support.hpp"

using namespace lens;
using namespace lens::testing;

TEST_SUITE("conformal") {

TEST_CASE("boundary maps to the real axis, interior to the upper half-plane") {
  Rng rng(21);
  for (const Case& c : standard_cases()) {
    const LensParams p = make(c);
    const SectorMap map(p);
    CHECK(map.map_to_halfplane(interior_probe(p)).imag() > 0);
    for (int i = 0; i < 50; ++i) {
      for (ArcId arc : {ArcId::C0, ArcId::C1}) {
        const cplx phi = map.map_to_halfplane(rng.boundary(p, arc, 0.05, 0.95).point);
        CHECK(std::abs(phi.imag()) < 1e-9 * std::max(1.0, std::abs(phi)));
      }
      CHECK(map.map_to_halfplane(rng.interior(p, 1e-4)).imag() > 0);
    }
    CHECK_THROWS_AS(map.map_to_halfplane(p.upper_corner()), Error);
  }
}

TEST_CASE("unit disc: oracle equals the disc Green function") {
  Rng rng(22);
  const LensParams p(kPi / 2, 1);
  const SectorMap map(p);
  for (int i = 0; i < 200; ++i) {
    const auto [z, w] = rng.pair(p, 1e-4, 1e-4);
    CHECK(std::abs(oracle_green(map, z, w) - disc_green(z, w)) < 1e-10);
  }
}

TEST_CASE("oracle agrees with the product formula") {
  Rng rng(23);
  for (const Case& c : standard_cases()) {
    const LensParams p = make(c);
    const SectorMap map(p);
    const KernelField field(p);
    double err = 0;
    for (int i = 0; i < 100; ++i) {
      const auto [z, w] = rng.pair(p, 1e-6, 1e-6);
      err = std::max(err, std::abs(field.green(z, w) - oracle_green(map, z, w)));
    }
    INFO("alpha=", c.alpha, " n=", c.n);
    CHECK(err < 1e-9);
    CHECK(std::abs(oracle_green(map, rng.boundary(p, ArcId::C1).point, interior_probe(p))) < 1e-9);
  }
  CHECK_THROWS_AS(oracle_green(SectorMap(LensParams(kPi / 2, 2)), 0.5, 0.5), Error);
}

TEST_CASE("strip coordinates invert and differentiate correctly") {
  Rng rng(24);
  for (const Case& c : standard_cases()) {
    const LensParams p = make(c);
    const SectorMap map(p);
    for (int i = 0; i < 50; ++i) {
      const cplx z = rng.interior(p, 1e-4);
      const cplx q = map.to_strip(z);
      CHECK(q.imag() > 0);
      CHECK(q.imag() < p.theta());
      const auto sp = map.from_strip(q);
      CHECK(std::abs(sp.z - z) < 1e-12 * std::max(1.0, std::abs(z)));
      const double h = 1e-6;
      const cplx fd = (map.from_strip(q + h).z - map.from_strip(q - h).z) / (2 * h);
      CHECK(std::abs(fd - sp.dz_dq) < 1e-6 * std::max(1.0, std::abs(sp.dz_dq)));
    }
    // C1 sits on the edge psi = c1_edge
    const cplx q1 = map.to_strip(rng.boundary(p, ArcId::C1, 0.1, 0.9).point);
    CHECK(std::abs(q1.imag() - map.c1_edge()) < 1e-12);
  }
}

}  // TEST_SUITE
