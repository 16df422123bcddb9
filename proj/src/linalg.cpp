#include <algorithm>
#include <cmath>
#include <numeric>

#include "pseudoherm/error.hpp"
#include "pseudoherm/linalg.hpp"

namespace pseudoherm {

CMatrix solve(const CMatrix& a, const CMatrix& b, const Tolerance& tol) {
  tol.validate();
  if (!a.is_square()) fail(ErrorCode::DimensionMismatch, "solve: matrix must be square");
  if (a.rows() != b.rows()) fail(ErrorCode::DimensionMismatch, "solve: right-hand side row count mismatch");
  const std::size_t n = a.rows();
  const std::size_t m = b.cols();
  CMatrix lu = a;
  CMatrix x = b;
  const double pivot_floor = tol.threshold(n, a.max_abs());

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(lu(i, k)) > std::abs(lu(p, k))) p = i;
    if (std::abs(lu(p, k)) <= pivot_floor) fail(ErrorCode::Singular, "solve: pivot below tolerance");
    if (p != k) {
      std::swap_ranges(lu.row(k).begin(), lu.row(k).end(), lu.row(p).begin());
      std::swap_ranges(x.row(k).begin(), x.row(k).end(), x.row(p).begin());
    }
    const cplx inv = 1.0 / lu(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const cplx f = lu(i, k) * inv;
      if (f == cplx{}) continue;
      lu(i, k) = 0.0;
      for (std::size_t j = k + 1; j < n; ++j) lu(i, j) -= f * lu(k, j);
      for (std::size_t j = 0; j < m; ++j) x(i, j) -= f * x(k, j);
    }
  }
  for (std::size_t kk = n; kk-- > 0;) {
    const cplx inv = 1.0 / lu(kk, kk);
    for (std::size_t j = 0; j < m; ++j) {
      cplx s = x(kk, j);
      for (std::size_t c = kk + 1; c < n; ++c) s -= lu(kk, c) * x(c, j);
      x(kk, j) = s * inv;
    }
  }
  return x;
}

CMatrix inverse(const CMatrix& a, const Tolerance& tol) { return solve(a, CMatrix::identity(a.rows()), tol); }

bool is_hermitian(const CMatrix& a, const Tolerance& tol) {
  tol.validate();
  if (!a.is_square()) return false;
  return distance(a, a.adjoint()) <= tol.threshold(a.rows(), a.frobenius_norm());
}

HermitianEigen eig_hermitian(const CMatrix& a) {
  if (!a.is_square()) fail(ErrorCode::DimensionMismatch, "eig_hermitian: matrix must be square");
  const std::size_t n = a.rows();
  const CMatrix sym = 0.5 * (a + a.adjoint());
  const SchurForm s = schur(sym);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return s.t(x, x).real() < s.t(y, y).real(); });
  HermitianEigen out{std::vector<double>(n), CMatrix(n)};
  for (std::size_t j = 0; j < n; ++j) {
    out.values[j] = s.t(order[j], order[j]).real();
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = s.q(i, order[j]);
  }
  return out;
}

bool is_positive_definite(const CMatrix& a, const Tolerance& tol) {
  if (!is_hermitian(a, tol)) return false;
  if (a.empty()) return true;
  return eig_hermitian(a).values.front() > tol.abs;
}

}  // namespace pseudoherm
