// AVX2 + FMA variants. This translation unit is compiled with -mavx2 -mfma and
// only entered after a runtime CPU check.
//
// The log-products keep a mantissa in [1, 2) and an integer exponent per lane
// so that long products cannot overflow; the final logarithm is taken once per
// node.

#include <immintrin.h>

#include <cassert>
#include <cmath>
#include <cstdint>
#include <limits>

#include "lens/batch.hpp"
#include "simd/kernel_math.hpp"

namespace lens::avx2 {
namespace {

constexpr double kLn2 = 0.693147180559945309417232121458;

struct Mantissa {
  __m256d m = _mm256_set1_pd(1.0);
  __m256i e = _mm256_setzero_si256();
  __m256d zero = _mm256_setzero_pd();  // lanes that received an exact zero factor

  void mul(__m256d x) {
    zero = _mm256_or_pd(zero, _mm256_cmp_pd(x, _mm256_setzero_pd(), _CMP_EQ_OQ));
    m = _mm256_mul_pd(m, x);
    const __m256i bits = _mm256_castpd_si256(m);
    const __m256i biased = _mm256_and_si256(_mm256_srli_epi64(bits, 52), _mm256_set1_epi64x(0x7ff));
    e = _mm256_add_epi64(e, _mm256_sub_epi64(biased, _mm256_set1_epi64x(1023)));
    const __m256i mant = _mm256_or_si256(_mm256_and_si256(bits, _mm256_set1_epi64x(0x000fffffffffffffLL)),
                                         _mm256_set1_epi64x(0x3ff0000000000000LL));
    m = _mm256_castsi256_pd(mant);
  }

  // log of each lane; -inf for lanes with a zero factor
  void store_log(double* out) const {
    alignas(32) double mm[4];
    alignas(32) std::int64_t ee[4];
    alignas(32) double zz[4];
    _mm256_store_pd(mm, m);
    _mm256_store_si256(reinterpret_cast<__m256i*>(ee), e);
    _mm256_store_pd(zz, zero);
    for (int l = 0; l < 4; ++l) {
      out[l] = zz[l] != 0.0 ? -std::numeric_limits<double>::infinity()
                            : std::log(mm[l]) + static_cast<double>(ee[l]) * kLn2;
    }
  }
};

// |num_k|^2 and |den_k|^2 for four nodes.
struct Factors {
  __m256d num2, den2, den_re, den_im;
};

inline Factors factors(const KernelCoeffs& c, int k, double zr, double zi, __m256d x, __m256d y) {
  const __m256d sp = _mm256_set1_pd(c.sp[k]);
  const __m256d sk = _mm256_set1_pd(c.sk[k]);
  const __m256d sm = _mm256_set1_pd(c.sm[k]);
  const __m256d vzr = _mm256_set1_pd(zr);
  const __m256d vzi = _mm256_set1_pd(zi);
  // conj(z) zeta = (zr x + zi y) + i (zr y - zi x)
  const __m256d czr = _mm256_fmadd_pd(vzr, x, _mm256_mul_pd(vzi, y));
  const __m256d czi = _mm256_fmsub_pd(vzr, y, _mm256_mul_pd(vzi, x));
  Factors f;
  if (k == 0) {
    // (conj(z) zeta - 1) sin(alpha) and (z - zeta) sin(alpha)
    const __m256d num_re = _mm256_mul_pd(_mm256_sub_pd(czr, _mm256_set1_pd(1.0)), sp);
    const __m256d num_im = _mm256_mul_pd(czi, sp);
    f.den_re = _mm256_mul_pd(_mm256_sub_pd(vzr, x), sm);
    f.den_im = _mm256_mul_pd(_mm256_sub_pd(vzi, y), sm);
    f.num2 = _mm256_fmadd_pd(num_re, num_re, _mm256_mul_pd(num_im, num_im));
    f.den2 = _mm256_fmadd_pd(f.den_re, f.den_re, _mm256_mul_pd(f.den_im, f.den_im));
    return f;
  }
  // num = conj(z) zeta sp - (conj(z) + zeta) sk - sm
  const __m256d num_re = _mm256_sub_pd(_mm256_fmsub_pd(czr, sp, _mm256_mul_pd(_mm256_add_pd(vzr, x), sk)), sm);
  const __m256d num_im = _mm256_fmsub_pd(czi, sp, _mm256_mul_pd(_mm256_sub_pd(y, vzi), sk));
  // z zeta = (zr x - zi y) + i (zr y + zi x)
  const __m256d pr = _mm256_fmsub_pd(vzr, x, _mm256_mul_pd(vzi, y));
  const __m256d pi = _mm256_fmadd_pd(vzr, y, _mm256_mul_pd(vzi, x));
  // den = z zeta sk + z sm - zeta sp + sk
  const __m256d den_re =
      _mm256_add_pd(_mm256_fmadd_pd(pr, sk, _mm256_fmsub_pd(vzr, sm, _mm256_mul_pd(x, sp))), sk);
  const __m256d den_im = _mm256_fmadd_pd(pi, sk, _mm256_fmsub_pd(vzi, sm, _mm256_mul_pd(y, sp)));
  f.num2 = _mm256_fmadd_pd(num_re, num_re, _mm256_mul_pd(num_im, num_im));
  f.den2 = _mm256_fmadd_pd(den_re, den_re, _mm256_mul_pd(den_im, den_im));
  f.den_re = den_re;
  f.den_im = den_im;
  return f;
}

enum class Product { Green, Neumann };

void log_product_batch(const KernelField& field, cplx z, NodeView nodes, std::span<double> out,
                       Product kind) {
  assert(out.size() == nodes.size());
  const KernelCoeffs& c = field.coeffs();
  const int n = field.n();
  const std::size_t count = nodes.size();
  const std::size_t full = count - count % 4;
  alignas(32) double lnum[4];
  alignas(32) double lden[4];
  for (std::size_t j = 0; j < full; j += 4) {
    const __m256d x = _mm256_loadu_pd(nodes.re.data() + j);
    const __m256d y = _mm256_loadu_pd(nodes.im.data() + j);
    Mantissa pn, pd;
    for (int k = 0; k < n; ++k) {
      const Factors f = factors(c, k, z.real(), z.imag(), x, y);
      pn.mul(f.num2);
      pd.mul(f.den2);
    }
    pn.store_log(lnum);
    pd.store_log(lden);
    for (int l = 0; l < 4; ++l) {
      out[j + l] = kind == Product::Green ? lnum[l] - lden[l] : -(lnum[l] + lden[l]);
    }
  }
  for (std::size_t j = full; j < count; ++j) {
    const cplx zeta{nodes.re[j], nodes.im[j]};
    out[j] = kind == Product::Green ? detail::green_ref(c, n, z, zeta) : detail::neumann_ref(c, n, z, zeta);
  }
}

}  // namespace

void green_batch(const KernelField& field, cplx z, NodeView nodes, std::span<double> out) {
  log_product_batch(field, z, nodes, out, Product::Green);
}

void neumann_batch(const KernelField& field, cplx z, NodeView nodes, std::span<double> out) {
  log_product_batch(field, z, nodes, out, Product::Neumann);
}

void poisson_batch(const KernelField& field, cplx z, ArcId arc, NodeView nodes,
                   std::span<double> out) {
  assert(out.size() == nodes.size());
  const KernelCoeffs& c = field.coeffs();
  const int n = field.n();
  const bool on_c0 = arc == ArcId::C0;
  const double offset = on_c0 ? detail::poisson_c0_offset(c, n) : static_cast<double>(n);
  const double sign = on_c0 ? 2.0 : -2.0;
  const std::size_t count = nodes.size();
  const std::size_t full = count - count % 4;
  for (std::size_t j = 0; j < full; j += 4) {
    const __m256d x = _mm256_loadu_pd(nodes.re.data() + j);
    const __m256d y = _mm256_loadu_pd(nodes.im.data() + j);
    __m256d sum = _mm256_setzero_pd();
    for (int k = 0; k < n; ++k) {
      const cplx numer = on_c0 ? detail::poisson_c0_numer(c, k, z) : detail::poisson_c1_numer(c, k, z);
      const Factors f = factors(c, k, z.real(), z.imag(), x, y);
      // Re(numer / den) = (nr dr + ni di) / |den|^2
      const __m256d dot = _mm256_fmadd_pd(_mm256_set1_pd(numer.real()), f.den_re,
                                          _mm256_mul_pd(_mm256_set1_pd(numer.imag()), f.den_im));
      sum = _mm256_add_pd(sum, _mm256_div_pd(dot, f.den2));
    }
    const __m256d res = _mm256_fmadd_pd(_mm256_set1_pd(sign), sum, _mm256_set1_pd(offset));
    _mm256_storeu_pd(out.data() + j, res);
  }
  for (std::size_t j = full; j < count; ++j) {
    out[j] = detail::poisson_ref(c, n, z, {nodes.re[j], nodes.im[j]}, on_c0);
  }
}

}  // namespace lens::avx2
