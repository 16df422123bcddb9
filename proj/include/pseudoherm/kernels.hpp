#pragma once

// Inner-loop kernels over interleaved complex<double> arrays. A portable
// scalar reference is always present; vector variants are compiled when the
// toolchain targets the ISA and selected at runtime when the CPU has it.

#include <cstddef>
#include <span>
#include <string_view>

#include "pseudoherm/cmatrix.hpp"

namespace pseudoherm::kernels {

struct KernelTable {
  std::string_view name;
  // c (m x n) = a (m x k) * b (k x n), all row-major and dense.
  void (*gemm)(std::size_t m, std::size_t n, std::size_t k, const cplx* a, const cplx* b, cplx* c);
  // sum_i conj(x_i) * y_i
  cplx (*dotc)(std::size_t len, const cplx* x, const cplx* y);
  // y += alpha * x
  void (*axpy)(std::size_t len, cplx alpha, const cplx* x, cplx* y);
  // (x, y) <- (u00 x + u01 y, u10 x + u11 y), u row-major 2x2
  void (*rot)(std::size_t len, const cplx* u, cplx* x, cplx* y);
  // sum_i |x_i|^2
  double (*norm2sq)(std::size_t len, const cplx* x);
};

const KernelTable& scalar_table();
/// Vector variant for the build target, or nullptr if none was compiled in.
const KernelTable* simd_table();
/// True iff simd_table() is non-null and the running CPU supports it.
bool simd_supported();

/// Table used by the library. Chosen once: the SIMD variant when supported,
/// unless PSEUDOHERM_KERNELS=scalar.
const KernelTable& active();

}  // namespace pseudoherm::kernels
