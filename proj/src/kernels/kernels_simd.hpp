#pragma once

#include "pseudoherm/kernels.hpp"

#if (defined(__x86_64__) || defined(_M_X64)) && !defined(PSEUDOHERM_NO_SIMD)
#define PSEUDOHERM_HAVE_AVX2 1
#endif

#if (defined(__aarch64__) || defined(_M_ARM64)) && !defined(PSEUDOHERM_NO_SIMD)
#define PSEUDOHERM_HAVE_NEON 1
#endif

namespace pseudoherm::kernels {

#if defined(PSEUDOHERM_HAVE_AVX2)
const KernelTable* avx2_table();
#endif

#if defined(PSEUDOHERM_HAVE_NEON)
const KernelTable* neon_table();
#endif

}  // namespace pseudoherm::kernels
