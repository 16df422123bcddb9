#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "pseudoherm/error.hpp"
#include "pseudoherm/kernels.hpp"
#include "pseudoherm/linalg.hpp"

namespace pseudoherm {
namespace {

constexpr int kMaxSweeps = 60;

// Column-major scratch so column pairs are contiguous for the kernels.
struct Columns {
  std::size_t len = 0;
  std::vector<cplx> data;
  cplx* col(std::size_t j) { return data.data() + j * len; }
};

Columns to_columns(const CMatrix& a) {
  Columns c{a.rows(), std::vector<cplx>(a.rows() * a.cols())};
  for (std::size_t j = 0; j < a.cols(); ++j)
    for (std::size_t i = 0; i < a.rows(); ++i) c.data[j * a.rows() + i] = a(i, j);
  return c;
}

}  // namespace

Svd svd(const CMatrix& a) {
  if (!a.all_finite()) fail(ErrorCode::InvalidArgument, "svd: matrix has non-finite entries");
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  const auto& k = kernels::active();
  // Work on a copy scaled to max |a_ij| = 1 so that tiny or huge inputs
  // neither underflow nor overflow the squared column norms.
  const double amax = a.max_abs();
  const double scale = amax > 0.0 ? amax : 1.0;
  const CMatrix scaled = (1.0 / scale) * a;
  Columns u = to_columns(scaled);
  Columns v = to_columns(CMatrix::identity(n));
  const double eps = std::numeric_limits<double>::epsilon();
  // Columns below this norm are numerically zero; rotating them only shuffles rounding noise.
  const double fro = scaled.frobenius_norm();
  const double negligible = eps * eps * fro * fro;

  bool converged = n < 2;
  for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
    converged = true;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double alpha = k.norm2sq(m, u.col(p));
        const double beta = k.norm2sq(m, u.col(q));
        const cplx gamma = k.dotc(m, u.col(p), u.col(q));
        const double g = std::abs(gamma);
        if (g == 0.0 || g <= static_cast<double>(std::max<std::size_t>(m, 1)) * eps * std::sqrt(alpha * beta) || std::min(alpha, beta) <= negligible) continue;
        converged = false;
        const double zeta = (beta - alpha) / (2.0 * g);
        const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        const cplx e = gamma / g;
        // [u_p, u_q] <- [u_p, u_q] * W, W = [[c, s], [-s conj(e), c conj(e)]]
        // expressed as a row rotation on the pair (u_p, u_q) viewed as rows.
        const cplx rot[4] = {c, -s * std::conj(e), s, c * std::conj(e)};
        k.rot(m, rot, u.col(p), u.col(q));
        k.rot(n, rot, v.col(p), v.col(q));
      }
    }
  }
  if (!converged) fail(ErrorCode::NonConvergence, "svd: Jacobi sweeps did not converge");

  std::vector<double> norms(n);
  for (std::size_t j = 0; j < n; ++j) norms[j] = std::sqrt(k.norm2sq(m, u.col(j)));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return norms[x] > norms[y]; });

  Svd out{std::vector<double>(n), CMatrix(m, n), CMatrix(n, n)};
  for (std::size_t jj = 0; jj < n; ++jj) {
    const std::size_t j = order[jj];
    out.sigma[jj] = norms[j] * scale;
    const double inv = norms[j] > 0.0 ? 1.0 / norms[j] : 0.0;
    for (std::size_t i = 0; i < m; ++i) out.u(i, jj) = u.col(j)[i] * inv;
    for (std::size_t i = 0; i < n; ++i) out.v(i, jj) = v.col(j)[i];
  }
  return out;
}

std::size_t rank_above(const CMatrix& a, double threshold) {
  if (a.empty()) return 0;
  const Svd s = svd(a);
  return static_cast<std::size_t>(std::count_if(s.sigma.begin(), s.sigma.end(), [&](double x) { return x > threshold; }));
}

std::size_t rank(const CMatrix& a, const Tolerance& tol) {
  tol.validate();
  if (a.empty()) return 0;
  const Svd s = svd(a);
  const double thr = tol.threshold(std::max(a.rows(), a.cols()), s.sigma.front());
  return static_cast<std::size_t>(std::count_if(s.sigma.begin(), s.sigma.end(), [&](double x) { return x > thr; }));
}

CMatrix null_space(const CMatrix& a, double threshold) {
  const std::size_t n = a.cols();
  const Svd s = svd(a);
  std::size_t r = 0;
  while (r < n && s.sigma[r] > threshold) ++r;
  return s.v.block(0, r, n, n - r);
}

CMatrix orthonormal_basis(const CMatrix& a, double threshold) {
  // Leading right singular vectors of a^dagger span the columns of a.
  const Svd s = svd(a.adjoint());
  std::size_t r = 0;
  while (r < s.sigma.size() && s.sigma[r] > threshold) ++r;
  return s.v.block(0, 0, s.v.rows(), r);
}

}  // namespace pseudoherm
