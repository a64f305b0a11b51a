#include "hlink/kernels.hpp"

#include <immintrin.h>

namespace hlink::kernels {
namespace {

void xor_words_avx2(std::uint64_t* dst, const std::uint64_t* src,
                    std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
    __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i),
                        _mm256_xor_si256(a, b));
  }
  for (; i < n; ++i) dst[i] ^= src[i];
}

// x < p * p + p < 2^31, so signed conversions are exact and the quotient
// x / p is never within rounding distance of an integer unless it is one.
inline __m128i mod_half(__m128i x, __m256d pd) {
  __m256d xd = _mm256_cvtepi32_pd(x);
  __m256d q = _mm256_floor_pd(_mm256_div_pd(xd, pd));
  return _mm256_cvttpd_epi32(q);
}

void axpy_mod_avx2(std::uint32_t* dst, const std::uint32_t* src,
                   std::uint32_t scale, std::uint32_t p, std::size_t n) {
  const __m256i vs = _mm256_set1_epi32(static_cast<int>(scale));
  const __m256i vp = _mm256_set1_epi32(static_cast<int>(p));
  const __m256d pd = _mm256_set1_pd(static_cast<double>(p));
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
    __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    __m256i x = _mm256_add_epi32(a, _mm256_mullo_epi32(b, vs));
    __m128i qlo = mod_half(_mm256_castsi256_si128(x), pd);
    __m128i qhi = mod_half(_mm256_extracti128_si256(x, 1), pd);
    __m256i q = _mm256_set_m128i(qhi, qlo);
    __m256i r = _mm256_sub_epi32(x, _mm256_mullo_epi32(q, vp));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), r);
  }
  for (; i < n; ++i) dst[i] = (dst[i] + scale * src[i]) % p;
}

void eval_polynomial_avx2(const PolynomialView& poly,
                          const double* const* axes, std::size_t count,
                          double* out) {
  std::size_t j = 0;
  for (; j + 4 <= count; j += 4) {
    __m256d sum = _mm256_setzero_pd();
    for (std::size_t t = 0; t < poly.term_count; ++t) {
      __m256d term = _mm256_set1_pd(poly.coefficients[t]);
      const std::uint8_t* e = poly.exponents + t * poly.dim;
      for (std::size_t i = 0; i < poly.dim; ++i) {
        if (e[i] == 0) continue;
        __m256d x = _mm256_loadu_pd(axes[i] + j);
        for (std::uint8_t r = 0; r < e[i]; ++r) term = _mm256_mul_pd(term, x);
      }
      sum = _mm256_add_pd(sum, term);
    }
    _mm256_storeu_pd(out + j, sum);
  }
  for (; j < count; ++j) {
    double sum = 0.0;
    for (std::size_t t = 0; t < poly.term_count; ++t) {
      double term = poly.coefficients[t];
      const std::uint8_t* e = poly.exponents + t * poly.dim;
      for (std::size_t i = 0; i < poly.dim; ++i) {
        for (std::uint8_t r = 0; r < e[i]; ++r) term = term * axes[i][j];
      }
      sum = sum + term;
    }
    out[j] = sum;
  }
}

}  // namespace

const KernelTable& avx2_table() noexcept {
  static const KernelTable table{Backend::avx2, xor_words_avx2, axpy_mod_avx2,
                                 eval_polynomial_avx2};
  return table;
}

}  // namespace hlink::kernels
