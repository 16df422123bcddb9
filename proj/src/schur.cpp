#include <array>
#include <cmath>
#include <limits>

#include "pseudoherm/error.hpp"
#include "pseudoherm/kernels.hpp"
#include "pseudoherm/linalg.hpp"

namespace pseudoherm {
namespace {

using Rot = std::array<cplx, 4>;  // row-major 2x2

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Unitary u with u * (x, y)^T = (rho, 0)^T.
Rot annihilator(cplx x, cplx y) {
  const double rho = std::hypot(std::abs(x), std::abs(y));
  if (rho == 0.0) return {1.0, 0.0, 0.0, 1.0};
  return {std::conj(x) / rho, std::conj(y) / rho, -y / rho, x / rho};
}

Rot adjoint(const Rot& u) { return {std::conj(u[0]), std::conj(u[2]), std::conj(u[1]), std::conj(u[3])}; }

// rows k, k+1 <- u * rows, for columns [c0, n)
void apply_left(CMatrix& m, std::size_t k, const Rot& u, std::size_t c0) {
  const std::size_t len = m.cols() - c0;
  kernels::active().rot(len, u.data(), &m(k, c0), &m(k + 1, c0));
}

// columns k, k+1 <- columns * u, for rows [0, r_end)
void apply_right(CMatrix& m, std::size_t k, const Rot& u, std::size_t r_end) {
  for (std::size_t i = 0; i < r_end; ++i) {
    const cplx a = m(i, k);
    const cplx b = m(i, k + 1);
    m(i, k) = a * u[0] + b * u[2];
    m(i, k + 1) = a * u[1] + b * u[3];
  }
}

void to_hessenberg(CMatrix& t, CMatrix& q) {
  const std::size_t n = t.rows();
  CVector v;
  for (std::size_t k = 0; k + 2 < n; ++k) {
    const std::size_t len = n - k - 1;
    v.assign(len, cplx{});
    double alpha2 = 0.0;
    for (std::size_t i = 0; i < len; ++i) {
      v[i] = t(k + 1 + i, k);
      alpha2 += std::norm(v[i]);
    }
    const double alpha = std::sqrt(alpha2);
    if (alpha == 0.0) continue;
    const cplx x0 = v[0];
    const cplx phase = std::abs(x0) == 0.0 ? cplx{1.0} : x0 / std::abs(x0);
    v[0] += phase * alpha;
    double vnorm2 = 0.0;
    for (const auto& z : v) vnorm2 += std::norm(z);
    if (vnorm2 == 0.0) continue;
    const double beta = 2.0 / vnorm2;

    // left: rows k+1.., all columns
    for (std::size_t j = 0; j < n; ++j) {
      cplx w{};
      for (std::size_t i = 0; i < len; ++i) w += std::conj(v[i]) * t(k + 1 + i, j);
      w *= beta;
      for (std::size_t i = 0; i < len; ++i) t(k + 1 + i, j) -= v[i] * w;
    }
    // right: columns k+1.., all rows of t and q
    for (CMatrix* m : {&t, &q}) {
      for (std::size_t r = 0; r < n; ++r) {
        cplx w{};
        for (std::size_t i = 0; i < len; ++i) w += (*m)(r, k + 1 + i) * v[i];
        w *= beta;
        for (std::size_t i = 0; i < len; ++i) (*m)(r, k + 1 + i) -= w * std::conj(v[i]);
      }
    }
    t(k + 1, k) = -phase * alpha;
    for (std::size_t i = k + 2; i < n; ++i) t(i, k) = 0.0;
  }
}

cplx wilkinson_shift(const CMatrix& t, std::size_t hi) {
  const cplx a = t(hi - 1, hi - 1);
  const cplx b = t(hi - 1, hi);
  const cplx c = t(hi, hi - 1);
  const cplx d = t(hi, hi);
  const cplx half = 0.5 * (a - d);
  const cplx disc = std::sqrt(half * half + b * c);
  const cplx mid = 0.5 * (a + d);
  const cplx e1 = mid + disc;
  const cplx e2 = mid - disc;
  return std::abs(e1 - d) <= std::abs(e2 - d) ? e1 : e2;
}

}  // namespace

SchurForm schur(const CMatrix& a) {
  if (!a.is_square()) fail(ErrorCode::DimensionMismatch, "schur: matrix must be square");
  if (!a.all_finite()) fail(ErrorCode::InvalidArgument, "schur: matrix has non-finite entries");
  const std::size_t n = a.rows();
  SchurForm s{CMatrix::identity(n), a};
  CMatrix& t = s.t;
  CMatrix& q = s.q;
  if (n <= 1) return s;

  to_hessenberg(t, q);
  const double anorm = std::max(t.frobenius_norm(), std::numeric_limits<double>::min());

  const std::size_t max_sweeps = 30 * n;
  std::size_t sweeps = 0;
  std::size_t since_deflation = 0;
  std::size_t hi = n - 1;
  std::vector<Rot> rots;
  while (hi > 0) {
    std::size_t lo = hi;
    while (lo > 0) {
      double scale = std::abs(t(lo - 1, lo - 1)) + std::abs(t(lo, lo));
      if (scale == 0.0) scale = anorm;
      if (std::abs(t(lo, lo - 1)) <= kEps * scale) {
        t(lo, lo - 1) = 0.0;
        break;
      }
      --lo;
    }
    if (lo == hi) {
      --hi;
      since_deflation = 0;
      continue;
    }
    if (++sweeps > max_sweeps) fail(ErrorCode::NonConvergence, "schur: QR iteration did not converge");
    ++since_deflation;

    cplx mu;
    if (since_deflation % 10 == 0) {
      mu = t(hi, hi) + 0.75 * std::abs(t(hi, hi - 1));  // exceptional shift
    } else {
      mu = wilkinson_shift(t, hi);
    }

    for (std::size_t i = lo; i <= hi; ++i) t(i, i) -= mu;
    rots.clear();
    for (std::size_t k = lo; k < hi; ++k) {
      const Rot u = annihilator(t(k, k), t(k + 1, k));
      apply_left(t, k, u, k);
      t(k + 1, k) = 0.0;
      rots.push_back(u);
    }
    for (std::size_t k = lo; k < hi; ++k) {
      const Rot ua = adjoint(rots[k - lo]);
      apply_right(t, k, ua, k + 2);
      apply_right(q, k, ua, n);
    }
    for (std::size_t i = lo; i <= hi; ++i) t(i, i) += mu;
  }
  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) t(i, j) = 0.0;
  return s;
}

void swap_schur_diagonal(SchurForm& s, std::size_t k) {
  CMatrix& t = s.t;
  const std::size_t n = t.rows();
  if (k + 1 >= n) fail(ErrorCode::InvalidArgument, "swap_schur_diagonal: index out of range");
  const cplx a = t(k, k);
  const cplx b = t(k, k + 1);
  const cplx c = t(k + 1, k + 1);
  if (a == c) return;
  // g e1 is the eigenvector of the 2x2 block for eigenvalue c.
  const cplx x0 = b;
  const cplx x1 = c - a;
  const double rho = std::hypot(std::abs(x0), std::abs(x1));
  const Rot g{x0 / rho, -std::conj(x1) / rho, x1 / rho, std::conj(x0) / rho};
  apply_left(t, k, adjoint(g), k);
  apply_right(t, k, g, k + 2);
  apply_right(s.q, k, g, n);
  t(k, k) = c;
  t(k + 1, k + 1) = a;
  t(k + 1, k) = 0.0;
}

std::size_t reorder_schur(SchurForm& s, std::vector<bool> select) {
  const std::size_t n = s.t.rows();
  if (select.size() != n) fail(ErrorCode::DimensionMismatch, "reorder_schur: selection length mismatch");
  std::size_t top = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (!select[j]) continue;
    for (std::size_t k = j; k > top; --k) {
      swap_schur_diagonal(s, k - 1);
      std::swap(select[k - 1], select[k]);
    }
    ++top;
  }
  return top;
}

CVector eigenvalues(const CMatrix& a, const Tolerance& tol) {
  tol.validate();
  const SchurForm s = schur(a);
  const std::size_t n = a.rows();
  const double residual = distance(s.q * s.t * s.q.adjoint(), a);
  if (residual > tol.threshold(n, a.frobenius_norm())) {
    fail(ErrorCode::NonConvergence, "eigenvalues: Schur residual exceeds tolerance");
  }
  CVector ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = s.t(i, i);
  return ev;
}

}  // namespace pseudoherm
