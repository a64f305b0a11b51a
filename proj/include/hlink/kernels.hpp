#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

// Data-parallel inner loops. Every kernel has a scalar reference version and,
// where the build and CPU allow it, a vectorized variant picked at runtime.
// Variants must agree bit-for-bit with the scalar reference.

namespace hlink::kernels {

enum class Backend { scalar, avx2 };

std::string_view to_string(Backend backend) noexcept;

/// Dense polynomial evaluation input: `term_count` terms over `dim`
/// variables, exponents stored row-major (term-major).
struct PolynomialView {
  const double* coefficients;
  const std::uint8_t* exponents;
  std::size_t term_count;
  std::size_t dim;
};

struct KernelTable {
  Backend backend;
  /// dst[i] ^= src[i]
  void (*xor_words)(std::uint64_t* dst, const std::uint64_t* src,
                    std::size_t n);
  /// dst[i] = (dst[i] + scale * src[i]) mod p, all inputs already reduced.
  void (*axpy_mod)(std::uint32_t* dst, const std::uint32_t* src,
                   std::uint32_t scale, std::uint32_t p, std::size_t n);
  /// out[j] = sum_t c_t * prod_i axes[i][j]^e_{t,i}; evaluation order is
  /// fixed (terms in order, variables in order, repeated multiplication).
  void (*eval_polynomial)(const PolynomialView& poly,
                          const double* const* axes, std::size_t count,
                          double* out);
};

/// Largest prime accepted by axpy_mod (p * p + p must fit in int32).
inline constexpr std::uint32_t kMaxPrime = 46337;

const KernelTable& scalar_table() noexcept;
#if defined(HLINK_WITH_AVX2)
const KernelTable& avx2_table() noexcept;
#endif

/// Backends compiled in and supported by the running CPU.
std::vector<Backend> available_backends();

/// Table used by the library. Defaults to the best available backend.
const KernelTable& active() noexcept;

/// Pin the active backend (tests use this to compare variants). Returns
/// false if the backend is unavailable on this machine.
bool force_backend(Backend backend) noexcept;

}  // namespace hlink::kernels
