#pragma once
// Kernel evaluation over arrays of nodes zeta_j = re[j] + i im[j] for a fixed z.
// Quadrature and grid output go through these entry points. Two variants
// exist: a scalar reference and an AVX2/FMA path picked at runtime.

#include <span>
#include <string>

#include "lens/kernels.hpp"

namespace lens {

enum class SimdLevel { Scalar, Avx2 };

std::string to_string(SimdLevel level);

/// Best level supported by this CPU and build.
SimdLevel detected_simd_level();
/// Level used by the dispatching entry points. Defaults to the detected level;
/// LENS_SIMD=scalar in the environment forces the reference path.
SimdLevel active_simd_level();
/// Request a level; clamped to detected_simd_level().
void set_simd_level(SimdLevel level);

struct NodeView {
  std::span<const double> re;
  std::span<const double> im;
  std::size_t size() const { return re.size(); }
};

void green_batch(const KernelField& field, cplx z, NodeView nodes, std::span<double> out);
void neumann_batch(const KernelField& field, cplx z, NodeView nodes, std::span<double> out);
/// All nodes lie on `arc`.
void poisson_batch(const KernelField& field, cplx z, ArcId arc, NodeView nodes,
                   std::span<double> out);

namespace scalar {
void green_batch(const KernelField& field, cplx z, NodeView nodes, std::span<double> out);
void neumann_batch(const KernelField& field, cplx z, NodeView nodes, std::span<double> out);
void poisson_batch(const KernelField& field, cplx z, ArcId arc, NodeView nodes,
                   std::span<double> out);
}  // namespace scalar

namespace avx2 {
/// Callable only when detected_simd_level() == SimdLevel::Avx2.
void green_batch(const KernelField& field, cplx z, NodeView nodes, std::span<double> out);
void neumann_batch(const KernelField& field, cplx z, NodeView nodes, std::span<double> out);
void poisson_batch(const KernelField& field, cplx z, ArcId arc, NodeView nodes,
                   std::span<double> out);
}  // namespace avx2

}  // namespace lens
