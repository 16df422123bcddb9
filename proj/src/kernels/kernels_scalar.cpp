#include "pseudoherm/kernels.hpp"

namespace pseudoherm::kernels {
namespace {

void gemm_scalar(std::size_t m, std::size_t n, std::size_t k, const cplx* a, const cplx* b, cplx* c) {
  for (std::size_t i = 0; i < m * n; ++i) c[i] = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    cplx* ci = c + i * n;
    for (std::size_t p = 0; p < k; ++p) {
      const cplx aip = a[i * k + p];
      if (aip == cplx{}) continue;
      const cplx* bp = b + p * n;
      for (std::size_t j = 0; j < n; ++j) ci[j] += aip * bp[j];
    }
  }
}

cplx dotc_scalar(std::size_t len, const cplx* x, const cplx* y) {
  cplx acc{};
  for (std::size_t i = 0; i < len; ++i) acc += std::conj(x[i]) * y[i];
  return acc;
}

void axpy_scalar(std::size_t len, cplx alpha, const cplx* x, cplx* y) {
  for (std::size_t i = 0; i < len; ++i) y[i] += alpha * x[i];
}

void rot_scalar(std::size_t len, const cplx* u, cplx* x, cplx* y) {
  for (std::size_t i = 0; i < len; ++i) {
    const cplx xi = x[i];
    const cplx yi = y[i];
    x[i] = u[0] * xi + u[1] * yi;
    y[i] = u[2] * xi + u[3] * yi;
  }
}

double norm2sq_scalar(std::size_t len, const cplx* x) {
  double acc = 0.0;
  for (std::size_t i = 0; i < len; ++i) acc += std::norm(x[i]);
  return acc;
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{"scalar", gemm_scalar, dotc_scalar, axpy_scalar, rot_scalar, norm2sq_scalar};
  return table;
}

}  // namespace pseudoherm::kernels
