#include <atomic>
#include <cstdlib>
#include <cstring>

#include "lens/batch.hpp"
#include "lens/error.hpp"

namespace lens {
namespace {

SimdLevel probe_cpu() {
#if defined(LENS_HAVE_AVX2) && (defined(__x86_64__) || defined(__i386__))
  __builtin_cpu_init();
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return SimdLevel::Avx2;
#endif
  return SimdLevel::Scalar;
}

SimdLevel initial_level() {
  const SimdLevel detected = detected_simd_level();
  if (const char* env = std::getenv("LENS_SIMD")) {
    if (std::strcmp(env, "scalar") == 0) return SimdLevel::Scalar;
  }
  return detected;
}

std::atomic<SimdLevel>& level_slot() {
  static std::atomic<SimdLevel> level{initial_level()};
  return level;
}

}  // namespace

std::string to_string(SimdLevel level) { return level == SimdLevel::Avx2 ? "avx2" : "scalar"; }

SimdLevel detected_simd_level() {
  static const SimdLevel level = probe_cpu();
  return level;
}

SimdLevel active_simd_level() { return level_slot().load(std::memory_order_relaxed); }

void set_simd_level(SimdLevel level) {
  if (level == SimdLevel::Avx2 && detected_simd_level() != SimdLevel::Avx2) level = SimdLevel::Scalar;
  level_slot().store(level, std::memory_order_relaxed);
}

#ifndef LENS_HAVE_AVX2
namespace avx2 {
void green_batch(const KernelField&, cplx, NodeView, std::span<double>) {
  throw Error("avx2 kernels not compiled in");
}
void neumann_batch(const KernelField&, cplx, NodeView, std::span<double>) {
  throw Error("avx2 kernels not compiled in");
}
void poisson_batch(const KernelField&, cplx, ArcId, NodeView, std::span<double>) {
  throw Error("avx2 kernels not compiled in");
}
}  // namespace avx2
#endif

void green_batch(const KernelField& field, cplx z, NodeView nodes, std::span<double> out) {
  if (active_simd_level() == SimdLevel::Avx2) return avx2::green_batch(field, z, nodes, out);
  scalar::green_batch(field, z, nodes, out);
}

void neumann_batch(const KernelField& field, cplx z, NodeView nodes, std::span<double> out) {
  if (active_simd_level() == SimdLevel::Avx2) return avx2::neumann_batch(field, z, nodes, out);
  scalar::neumann_batch(field, z, nodes, out);
}

void poisson_batch(const KernelField& field, cplx z, ArcId arc, NodeView nodes,
                   std::span<double> out) {
  if (active_simd_level() == SimdLevel::Avx2) return avx2::poisson_batch(field, z, arc, nodes, out);
  scalar::poisson_batch(field, z, arc, nodes, out);
}

}  // namespace lens
