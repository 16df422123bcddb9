#include <cstdlib>
#include <string_view>

#include "kernels_simd.hpp"

namespace pseudoherm::kernels {

const KernelTable* simd_table() {
#if defined(PSEUDOHERM_HAVE_AVX2)
  return avx2_table();
#elif defined(PSEUDOHERM_HAVE_NEON)
  return neon_table();
#else
  return nullptr;
#endif
}

bool simd_supported() {
#if defined(PSEUDOHERM_HAVE_AVX2)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#elif defined(PSEUDOHERM_HAVE_NEON)
  return true;  // Advanced SIMD is mandatory on AArch64.
#else
  return false;
#endif
}

const KernelTable& active() {
  static const KernelTable& chosen = [] () -> const KernelTable& {
    const char* forced = std::getenv("PSEUDOHERM_KERNELS");
    if (forced != nullptr && std::string_view(forced) == "scalar") return scalar_table();
    if (simd_supported()) return *simd_table();
    return scalar_table();
  }();
  return chosen;
}

}  // namespace pseudoherm::kernels
