// AArch64 Advanced SIMD variants: one complex<double> per float64x2_t.

#include "kernels_simd.hpp"

#if defined(PSEUDOHERM_HAVE_NEON)

#include <arm_neon.h>

namespace pseudoherm::kernels {
namespace {

inline float64x2_t load1(const cplx* p) { return vld1q_f64(reinterpret_cast<const double*>(p)); }
inline void store1(cplx* p, float64x2_t v) { vst1q_f64(reinterpret_cast<double*>(p), v); }

// alpha * x with alpha = (ar, ai); sign = {-ai, ai}.
inline float64x2_t cmul(double ar, float64x2_t sign, float64x2_t x) {
  const float64x2_t xs = vextq_f64(x, x, 1);
  return vfmaq_f64(vmulq_n_f64(x, ar), xs, sign);
}

inline float64x2_t sign_of(cplx a) {
  const double s[2] = {-a.imag(), a.imag()};
  return vld1q_f64(s);
}

void gemm_neon(std::size_t m, std::size_t n, std::size_t k, const cplx* a, const cplx* b, cplx* c) {
  for (std::size_t i = 0; i < m; ++i) {
    cplx* ci = c + i * n;
    for (std::size_t j = 0; j < n; ++j) ci[j] = 0.0;
    for (std::size_t p = 0; p < k; ++p) {
      const cplx aip = a[i * k + p];
      if (aip == cplx{}) continue;
      const float64x2_t sign = sign_of(aip);
      const cplx* bp = b + p * n;
      for (std::size_t j = 0; j < n; ++j) store1(ci + j, vaddq_f64(load1(ci + j), cmul(aip.real(), sign, load1(bp + j))));
    }
  }
}

cplx dotc_neon(std::size_t len, const cplx* x, const cplx* y) {
  float64x2_t same = vdupq_n_f64(0.0);
  float64x2_t cross = vdupq_n_f64(0.0);
  for (std::size_t i = 0; i < len; ++i) {
    const float64x2_t xv = load1(x + i);
    const float64x2_t yv = load1(y + i);
    same = vfmaq_f64(same, xv, yv);
    cross = vfmaq_f64(cross, xv, vextq_f64(yv, yv, 1));
  }
  return {vgetq_lane_f64(same, 0) + vgetq_lane_f64(same, 1), vgetq_lane_f64(cross, 0) - vgetq_lane_f64(cross, 1)};
}

void axpy_neon(std::size_t len, cplx alpha, const cplx* x, cplx* y) {
  const float64x2_t sign = sign_of(alpha);
  for (std::size_t i = 0; i < len; ++i) store1(y + i, vaddq_f64(load1(y + i), cmul(alpha.real(), sign, load1(x + i))));
}

void rot_neon(std::size_t len, const cplx* u, cplx* x, cplx* y) {
  const float64x2_t s00 = sign_of(u[0]), s01 = sign_of(u[1]), s10 = sign_of(u[2]), s11 = sign_of(u[3]);
  for (std::size_t i = 0; i < len; ++i) {
    const float64x2_t xv = load1(x + i);
    const float64x2_t yv = load1(y + i);
    store1(x + i, vaddq_f64(cmul(u[0].real(), s00, xv), cmul(u[1].real(), s01, yv)));
    store1(y + i, vaddq_f64(cmul(u[2].real(), s10, xv), cmul(u[3].real(), s11, yv)));
  }
}

double norm2sq_neon(std::size_t len, const cplx* x) {
  float64x2_t acc = vdupq_n_f64(0.0);
  for (std::size_t i = 0; i < len; ++i) {
    const float64x2_t v = load1(x + i);
    acc = vfmaq_f64(acc, v, v);
  }
  return vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
}

}  // namespace

const KernelTable* neon_table() {
  static const KernelTable table{"neon", gemm_neon, dotc_neon, axpy_neon, rot_neon, norm2sq_neon};
  return &table;
}

}  // namespace pseudoherm::kernels

#endif  // PSEUDOHERM_HAVE_NEON
