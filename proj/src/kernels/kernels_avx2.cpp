// AVX2 + FMA variants. This translation unit is compiled with -mavx2 -mfma;
// nothing here may run before dispatch has checked the CPU.

#include "kernels_simd.hpp"

#if defined(PSEUDOHERM_HAVE_AVX2)

#include <immintrin.h>

namespace pseudoherm::kernels {
namespace {

// Two complex numbers per register: [re0, im0, re1, im1].

inline __m256d load2(const cplx* p) { return _mm256_loadu_pd(reinterpret_cast<const double*>(p)); }
inline void store2(cplx* p, __m256d v) { _mm256_storeu_pd(reinterpret_cast<double*>(p), v); }

// alpha * x for a broadcast complex alpha = (ar, ai).
inline __m256d cmul_bcast(__m256d ar, __m256d ai, __m256d x) {
  const __m256d xs = _mm256_permute_pd(x, 0b0101);
  return _mm256_fmaddsub_pd(ar, x, _mm256_mul_pd(ai, xs));
}

void gemm_avx2(std::size_t m, std::size_t n, std::size_t k, const cplx* a, const cplx* b, cplx* c) {
  const std::size_t n2 = n & ~std::size_t{1};
  for (std::size_t i = 0; i < m; ++i) {
    cplx* ci = c + i * n;
    for (std::size_t j = 0; j < n; ++j) ci[j] = 0.0;
    for (std::size_t p = 0; p < k; ++p) {
      const cplx aip = a[i * k + p];
      if (aip == cplx{}) continue;
      const __m256d ar = _mm256_set1_pd(aip.real());
      const __m256d ai = _mm256_set1_pd(aip.imag());
      const cplx* bp = b + p * n;
      std::size_t j = 0;
      for (; j < n2; j += 2) store2(ci + j, _mm256_add_pd(load2(ci + j), cmul_bcast(ar, ai, load2(bp + j))));
      for (; j < n; ++j) ci[j] += aip * bp[j];
    }
  }
}

cplx dotc_avx2(std::size_t len, const cplx* x, const cplx* y) {
  __m256d same = _mm256_setzero_pd();   // [xr*yr, xi*yi, ...]
  __m256d cross = _mm256_setzero_pd();  // [xr*yi, xi*yr, ...]
  const std::size_t len2 = len & ~std::size_t{1};
  std::size_t i = 0;
  for (; i < len2; i += 2) {
    const __m256d xv = load2(x + i);
    const __m256d yv = load2(y + i);
    same = _mm256_fmadd_pd(xv, yv, same);
    cross = _mm256_fmadd_pd(xv, _mm256_permute_pd(yv, 0b0101), cross);
  }
  alignas(32) double s[4];
  alignas(32) double t[4];
  _mm256_store_pd(s, same);
  _mm256_store_pd(t, cross);
  cplx acc{s[0] + s[1] + s[2] + s[3], t[0] - t[1] + t[2] - t[3]};
  for (; i < len; ++i) acc += std::conj(x[i]) * y[i];
  return acc;
}

void axpy_avx2(std::size_t len, cplx alpha, const cplx* x, cplx* y) {
  const __m256d ar = _mm256_set1_pd(alpha.real());
  const __m256d ai = _mm256_set1_pd(alpha.imag());
  const std::size_t len2 = len & ~std::size_t{1};
  std::size_t i = 0;
  for (; i < len2; i += 2) store2(y + i, _mm256_add_pd(load2(y + i), cmul_bcast(ar, ai, load2(x + i))));
  for (; i < len; ++i) y[i] += alpha * x[i];
}

void rot_avx2(std::size_t len, const cplx* u, cplx* x, cplx* y) {
  const __m256d r00 = _mm256_set1_pd(u[0].real()), i00 = _mm256_set1_pd(u[0].imag());
  const __m256d r01 = _mm256_set1_pd(u[1].real()), i01 = _mm256_set1_pd(u[1].imag());
  const __m256d r10 = _mm256_set1_pd(u[2].real()), i10 = _mm256_set1_pd(u[2].imag());
  const __m256d r11 = _mm256_set1_pd(u[3].real()), i11 = _mm256_set1_pd(u[3].imag());
  const std::size_t len2 = len & ~std::size_t{1};
  std::size_t i = 0;
  for (; i < len2; i += 2) {
    const __m256d xv = load2(x + i);
    const __m256d yv = load2(y + i);
    store2(x + i, _mm256_add_pd(cmul_bcast(r00, i00, xv), cmul_bcast(r01, i01, yv)));
    store2(y + i, _mm256_add_pd(cmul_bcast(r10, i10, xv), cmul_bcast(r11, i11, yv)));
  }
  for (; i < len; ++i) {
    const cplx xi = x[i];
    const cplx yi = y[i];
    x[i] = u[0] * xi + u[1] * yi;
    y[i] = u[2] * xi + u[3] * yi;
  }
}

double norm2sq_avx2(std::size_t len, const cplx* x) {
  __m256d acc = _mm256_setzero_pd();
  const std::size_t len2 = len & ~std::size_t{1};
  std::size_t i = 0;
  for (; i < len2; i += 2) {
    const __m256d v = load2(x + i);
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  alignas(32) double s[4];
  _mm256_store_pd(s, acc);
  double total = s[0] + s[1] + s[2] + s[3];
  for (; i < len; ++i) total += std::norm(x[i]);
  return total;
}

}  // namespace

const KernelTable* avx2_table() {
  static const KernelTable table{"avx2", gemm_avx2, dotc_avx2, axpy_avx2, rot_avx2, norm2sq_avx2};
  return &table;
}

}  // namespace pseudoherm::kernels

#endif  // PSEUDOHERM_HAVE_AVX2
