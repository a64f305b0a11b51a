#include <atomic>

#include "hlink/kernels.hpp"

namespace hlink::kernels {
namespace {

bool cpu_has_avx2() noexcept {
#if defined(HLINK_WITH_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const KernelTable* best_table() noexcept {
#if defined(HLINK_WITH_AVX2)
  if (cpu_has_avx2()) return &avx2_table();
#endif
  return &scalar_table();
}

std::atomic<const KernelTable*>& current() noexcept {
  static std::atomic<const KernelTable*> table{best_table()};
  return table;
}

}  // namespace

std::string_view to_string(Backend backend) noexcept {
  switch (backend) {
    case Backend::scalar: return "scalar";
    case Backend::avx2: return "avx2";
  }
  return "unknown";
}

std::vector<Backend> available_backends() {
  std::vector<Backend> out{Backend::scalar};
  if (cpu_has_avx2()) out.push_back(Backend::avx2);
  return out;
}

const KernelTable& active() noexcept { return *current().load(); }

bool force_backend(Backend backend) noexcept {
  switch (backend) {
    case Backend::scalar:
      current().store(&scalar_table());
      return true;
    case Backend::avx2:
#if defined(HLINK_WITH_AVX2)
      if (cpu_has_avx2()) {
        current().store(&avx2_table());
        return true;
      }
#endif
      return false;
  }
  return false;
}

}  // namespace hlink::kernels
