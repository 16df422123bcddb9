#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "pseudoherm/error.hpp"
#include "pseudoherm/linalg.hpp"
#include "pseudoherm/spectral.hpp"

namespace pseudoherm {
namespace {

CMatrix gaussian_unitary(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix q(n);
  for (auto& z : q.values()) z = {normal(rng), normal(rng)};
  // Modified Gram-Schmidt; a Gaussian matrix is full rank with probability one.
  for (std::size_t j = 0; j < n; ++j) {
    CVector v = q.col(j);
    for (std::size_t k = 0; k < j; ++k) {
      const CVector u = q.col(k);
      const cplx d = dotc(u, v);
      for (std::size_t i = 0; i < n; ++i) v[i] -= d * u[i];
    }
    const double nv = norm2(v);
    for (auto& z : v) z /= nv;
    q.set_col(j, v);
  }
  return q;
}

}  // namespace

CMatrix random_basis(std::size_t n, double condition, std::uint64_t seed) {
  if (!(condition >= 1.0) || !std::isfinite(condition))
    fail(ErrorCode::InvalidArgument, "basis condition number must be finite and >= 1");
  std::mt19937_64 rng(seed);
  const CMatrix u = gaussian_unitary(n, rng);
  const CMatrix v = gaussian_unitary(n, rng);
  CVector d(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double f = n == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(n - 1);
    d[i] = std::pow(condition, f);
  }
  return u * CMatrix::diagonal(d) * v.adjoint();
}

Synthesis synthesize(const SynthesisSpec& spec, const Tolerance& tol) {
  tol.validate();
  if (spec.groups.empty()) fail(ErrorCode::InvalidArgument, "synthesis spec has no groups");
  std::vector<EigenGroup> groups;
  std::size_t n = 0;
  for (const auto& g : spec.groups) {
    if (!std::isfinite(g.eigenvalue.real()) || !std::isfinite(g.eigenvalue.imag()))
      fail(ErrorCode::InvalidArgument, "eigenvalue is not finite");
    EigenGroup eg;
    eg.spec = g;
    std::sort(eg.spec.block_dims.begin(), eg.spec.block_dims.end(), std::greater<>());
    if (eg.spec.block_dims.empty() || eg.spec.block_dims.back() == 0)
      fail(ErrorCode::InvalidArgument, "every group needs positive block dimensions");
    n += eg.spec.algebraic_multiplicity();
    groups.push_back(std::move(eg));
  }
  if (n > kDefaultMaxDim) fail(ErrorCode::InvalidArgument, "synthesized dimension exceeds the configured maximum");

  for (std::size_t a = 0; a < groups.size(); ++a)
    for (std::size_t b = a + 1; b < groups.size(); ++b)
      if (std::abs(groups[a].spec.eigenvalue - groups[b].spec.eigenvalue) <= tol.abs)
        fail(ErrorCode::InvalidArgument, "two groups share an eigenvalue; list all its blocks in one group");

  // Realness and pairing follow the same rule analyze applies to clusters.
  for (auto& g : groups) {
    const cplx e = g.spec.eigenvalue;
    if (std::abs(e.imag()) <= tol.abs + tol.rel * std::abs(e)) {
      g.spec.eigenvalue = e.real();
      g.kind = GroupKind::Real;
    } else {
      g.kind = GroupKind::Unpaired;
    }
  }
  int next_pair = 0;
  for (std::size_t a = 0; a < groups.size(); ++a) {
    if (groups[a].kind != GroupKind::Unpaired || groups[a].spec.eigenvalue.imag() < 0.0) continue;
    for (std::size_t b = 0; b < groups.size(); ++b) {
      if (groups[b].kind != GroupKind::Unpaired || b == a) continue;
      const cplx target = std::conj(groups[a].spec.eigenvalue);
      if (std::abs(groups[b].spec.eigenvalue - target) > tol.abs + tol.rel * std::abs(target)) continue;
      if (groups[b].spec.block_dims != groups[a].spec.block_dims) continue;
      groups[a].kind = GroupKind::PlusMember;
      groups[b].kind = GroupKind::MinusMember;
      groups[b].spec.eigenvalue = target;
      groups[a].pair_id = groups[b].pair_id = next_pair++;
      break;
    }
  }
  if (spec.pseudo_hermitian) {
    for (const auto& g : groups) {
      if (g.kind == GroupKind::Unpaired) {
        std::ostringstream msg;
        msg << "complex eigenvalue " << g.spec.eigenvalue
            << " needs a conjugate partner with the same block dimensions";
        fail(ErrorCode::NotPaired, msg.str());
      }
    }
  }

  CMatrix basis;
  if (spec.basis) {
    basis = *spec.basis;
    if (basis.rows() != n || basis.cols() != n)
      fail(ErrorCode::DimensionMismatch, "explicit basis does not match the block dimensions");
  } else {
    basis = random_basis(n, spec.condition, spec.seed);
  }
  Synthesis out;
  out.dec = make_decomposition(std::move(groups), std::move(basis), tol);
  out.h = out.dec.reconstruct();
  return out;
}

}  // namespace pseudoherm
