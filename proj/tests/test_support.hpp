#pragma once

// Shared helpers for the unit and acceptance tests: seeded generators and
// small comparison utilities. Generators are hand-rolled on std::mt19937_64
// so every failing case can be replayed from its seed.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "pseudoherm/cmatrix.hpp"
#include "pseudoherm/krein.hpp"
#include "pseudoherm/linalg.hpp"
#include "pseudoherm/spectral.hpp"

namespace testsupport {

using pseudoherm::CMatrix;
using pseudoherm::cplx;
using pseudoherm::CVector;

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(rng_); }
  cplx cnormal() { return {normal(), normal()}; }
  bool coin() { return integer(0, 1) == 1; }

  CVector vector(std::size_t n) {
    CVector v(n);
    for (auto& z : v) z = cnormal();
    return v;
  }

  CMatrix matrix(std::size_t r, std::size_t c) {
    CMatrix m(r, c);
    for (auto& z : m.values()) z = cnormal();
    return m;
  }
  CMatrix matrix(std::size_t n) { return matrix(n, n); }

  CMatrix hermitian(std::size_t n) {
    const CMatrix a = matrix(n);
    return 0.5 * (a + a.adjoint());
  }

  // Unitary factor of a Gaussian matrix via modified Gram-Schmidt.
  CMatrix unitary(std::size_t n) {
    CMatrix q = matrix(n);
    for (std::size_t j = 0; j < n; ++j) {
      CVector v = q.col(j);
      for (std::size_t k = 0; k < j; ++k) {
        const CVector u = q.col(k);
        const cplx d = pseudoherm::dotc(u, v);
        for (std::size_t i = 0; i < n; ++i) v[i] -= d * u[i];
      }
      const double nv = pseudoherm::norm2(v);
      for (auto& z : v) z /= nv;
      q.set_col(j, v);
    }
    return q;
  }

  // Invertible matrix with singular values log-spaced in [1, cond].
  CMatrix conditioned(std::size_t n, double cond) {
    const CMatrix u = unitary(n);
    const CMatrix v = unitary(n);
    CVector d(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double f = n == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(n - 1);
      d[i] = std::pow(cond, f);
    }
    return u * CMatrix::diagonal(d) * v.adjoint();
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline double rel_distance(const CMatrix& a, const CMatrix& b) {
  const double scale = std::max({1.0, a.frobenius_norm(), b.frobenius_norm()});
  return pseudoherm::distance(a, b) / scale;
}

inline double max_entry_diff(const CMatrix& a, const CMatrix& b) { return (a - b).max_abs(); }

// Eigenvalues at least `gap` apart: real ones on the real axis, complex
// ones in the upper half plane (their conjugates are added by the caller).
inline std::vector<cplx> separated_points(Gen& g, std::size_t count, bool real, double gap) {
  std::vector<cplx> pts;
  while (pts.size() < count) {
    const cplx z = real ? cplx(g.uniform(-3.0, 3.0), 0.0) : cplx(g.uniform(-3.0, 3.0), g.uniform(0.5, 2.0));
    bool ok = true;
    for (const cplx& p : pts) ok = ok && std::abs(p - z) >= gap && std::abs(std::conj(p) - z) >= gap;
    if (ok) pts.push_back(z);
  }
  return pts;
}

inline std::vector<std::size_t> random_dims(Gen& g, std::size_t budget, std::size_t max_block) {
  std::vector<std::size_t> dims;
  const int count = g.integer(1, 2);
  for (int i = 0; i < count && budget > 0; ++i) {
    const std::size_t p = static_cast<std::size_t>(g.integer(1, static_cast<int>(std::min(budget, max_block))));
    dims.push_back(p);
    budget -= p;
  }
  return dims;
}

// Mixed real / conjugate-pair specification with n <= max_n.
inline pseudoherm::SynthesisSpec random_spec(Gen& g, std::size_t max_n, std::size_t max_block, double max_cond) {
  pseudoherm::SynthesisSpec spec;
  std::size_t budget = static_cast<std::size_t>(g.integer(1, static_cast<int>(max_n)));
  const int n_pairs = budget >= 2 ? g.integer(0, 2) : 0;
  const auto complex_pts = separated_points(g, n_pairs, false, 0.6);
  for (const cplx& z : complex_pts) {
    if (budget < 2) break;
    auto dims = random_dims(g, budget / 2, max_block);
    std::size_t m = 0;
    for (auto p : dims) m += p;
    budget -= 2 * m;
    spec.groups.push_back({z, dims});
    spec.groups.push_back({std::conj(z), dims});
  }
  const int n_real = budget == 0 ? 0 : g.integer(1, 3);
  const auto real_pts = separated_points(g, n_real, true, 0.6);
  for (std::size_t i = 0; i < real_pts.size() && budget > 0; ++i) {
    auto dims = i + 1 == real_pts.size() ? std::vector<std::size_t>{} : random_dims(g, budget, max_block);
    if (dims.empty()) {
      // last real group absorbs what is left, in blocks of at most max_block
      while (budget > 0) {
        const std::size_t p = std::min(budget, max_block);
        dims.push_back(p);
        budget -= p;
      }
    } else {
      for (auto p : dims) budget -= p;
    }
    spec.groups.push_back({real_pts[i], dims});
  }
  spec.seed = static_cast<std::uint64_t>(g.integer(0, 1 << 30));
  spec.condition = std::pow(10.0, g.uniform(0.0, std::log10(max_cond)));
  return spec;
}

// Sorted (eigenvalue, sorted dims) summary used to compare structures.
struct GroupSummary {
  cplx eigenvalue;
  std::vector<std::size_t> dims;
};

inline std::vector<GroupSummary> summarize(const std::vector<pseudoherm::JordanBlockSpec>& groups) {
  std::vector<GroupSummary> out;
  for (const auto& g : groups) {
    auto d = g.block_dims;
    std::sort(d.rbegin(), d.rend());
    out.push_back({g.eigenvalue, d});
  }
  std::sort(out.begin(), out.end(), [](const GroupSummary& a, const GroupSummary& b) {
    if (a.eigenvalue.real() != b.eigenvalue.real()) return a.eigenvalue.real() < b.eigenvalue.real();
    return a.eigenvalue.imag() < b.eigenvalue.imag();
  });
  return out;
}

inline std::vector<GroupSummary> summarize(const pseudoherm::SpectralDecomposition& dec) {
  std::vector<pseudoherm::JordanBlockSpec> specs;
  for (const auto& g : dec.groups) specs.push_back(g.spec);
  return summarize(specs);
}

// True iff both summaries list the same groups with eigenvalues within tol.
inline bool same_structure(std::vector<GroupSummary> a, std::vector<GroupSummary> b, double tol) {
  if (a.size() != b.size()) return false;
  for (const auto& x : a) {
    auto it = std::find_if(b.begin(), b.end(), [&](const GroupSummary& y) {
      return std::abs(x.eigenvalue - y.eigenvalue) <= tol && x.dims == y.dims;
    });
    if (it == b.end()) return false;
    b.erase(it);
  }
  return true;
}

// Greedy multiset matching of two complex lists; returns the worst pairing error.
inline double multiset_distance(CVector a, CVector b) {
  if (a.size() != b.size()) return INFINITY;
  double worst = 0.0;
  for (const cplx& x : a) {
    auto best = std::min_element(b.begin(), b.end(), [&](cplx p, cplx q) { return std::abs(p - x) < std::abs(q - x); });
    worst = std::max(worst, std::abs(*best - x));
    b.erase(best);
  }
  return worst;
}

// Truncated power series (upper-triangular Toeplitz blocks) of length p.
inline CVector series_mul(const CVector& a, const CVector& b) {
  CVector c(a.size(), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; i + j < a.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

inline CVector series_inv(const CVector& a) {
  CVector b(a.size(), 0.0);
  b[0] = 1.0 / a[0];
  for (std::size_t k = 1; k < a.size(); ++k) {
    cplx s = 0.0;
    for (std::size_t j = 1; j <= k; ++j) s += a[j] * b[k - j];
    b[k] = -s / a[0];
  }
  return b;
}

inline CVector series_exp(const CVector& q) {
  // exp(q0) * sum_k (q - q0)^k / k!, the tail being nilpotent
  CVector nil = q;
  nil[0] = 0.0;
  CVector term(q.size(), 0.0), sum(q.size(), 0.0);
  term[0] = 1.0;
  for (std::size_t k = 0; k < q.size(); ++k) {
    for (std::size_t i = 0; i < q.size(); ++i) sum[i] += term[i];
    term = series_mul(term, nil);
    for (auto& z : term) z /= static_cast<double>(k + 1);
  }
  for (auto& z : sum) z *= std::exp(q[0]);
  return sum;
}

// Toeplitz coefficients making commutant_element unitary for every parity of
// the decomposition: exp(i q) with q real on real blocks, and on a pair an
// arbitrary invertible series c on the Plus member with conj(c)^-1 on the Minus member.
inline pseudoherm::CommutantParams random_unitary_commutant(Gen& g, const pseudoherm::SpectralDecomposition& dec,
                                                             double spread = 1.0) {
  using pseudoherm::GroupKind;
  pseudoherm::CommutantParams params;
  params.coefficients.resize(dec.groups.size());
  for (std::size_t gi = 0; gi < dec.groups.size(); ++gi) {
    const auto& grp = dec.groups[gi];
    if (grp.kind == GroupKind::MinusMember) continue;
    for (std::size_t p : grp.spec.block_dims) {
      CVector c(p);
      if (grp.kind == GroupKind::Real) {
        for (auto& z : c) z = cplx(0.0, g.uniform(-3.0, 3.0));
        c = series_exp(c);
      } else {
        for (auto& z : c) z = cplx(g.uniform(-1.0, 1.0), g.uniform(-1.0, 1.0));
        c[0] = std::polar(std::exp(g.uniform(-spread, spread)), g.uniform(-3.0, 3.0));
      }
      params.coefficients[gi].push_back(c);
      if (grp.kind == GroupKind::PlusMember) {
        CVector cc(p);
        for (std::size_t i = 0; i < p; ++i) cc[i] = std::conj(c[i]);
        params.coefficients[dec.partner(gi)].push_back(series_inv(cc));
      }
    }
  }
  return params;
}

}  // namespace testsupport
