#include "hlink/kernels.hpp"

namespace hlink::kernels {
namespace {

void xor_words_scalar(std::uint64_t* dst, const std::uint64_t* src,
                      std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] ^= src[i];
}

void axpy_mod_scalar(std::uint32_t* dst, const std::uint32_t* src,
                     std::uint32_t scale, std::uint32_t p, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    dst[i] = (dst[i] + scale * src[i]) % p;
  }
}

void eval_polynomial_scalar(const PolynomialView& poly,
                            const double* const* axes, std::size_t count,
                            double* out) {
  for (std::size_t j = 0; j < count; ++j) {
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

const KernelTable& scalar_table() noexcept {
  static const KernelTable table{Backend::scalar, xor_words_scalar,
                                 axpy_mod_scalar, eval_polynomial_scalar};
  return table;
}

}  // namespace hlink::kernels
