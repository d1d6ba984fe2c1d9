#include <cassert>

#include "lens/batch.hpp"
#include "simd/kernel_math.hpp"

namespace lens::scalar {

void green_batch(const KernelField& field, cplx z, NodeView nodes, std::span<double> out) {
  assert(out.size() == nodes.size());
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    out[j] = detail::green_ref(field.coeffs(), field.n(), z, {nodes.re[j], nodes.im[j]});
  }
}

void neumann_batch(const KernelField& field, cplx z, NodeView nodes, std::span<double> out) {
  assert(out.size() == nodes.size());
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    out[j] = detail::neumann_ref(field.coeffs(), field.n(), z, {nodes.re[j], nodes.im[j]});
  }
}

void poisson_batch(const KernelField& field, cplx z, ArcId arc, NodeView nodes,
                   std::span<double> out) {
  assert(out.size() == nodes.size());
  const bool on_c0 = arc == ArcId::C0;
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    out[j] = detail::poisson_ref(field.coeffs(), field.n(), z, {nodes.re[j], nodes.im[j]}, on_c0);
  }
}

}  // namespace lens::scalar
