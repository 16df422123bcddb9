#include "pseudoherm/operators.hpp"

#include <sstream>

#include "pseudoherm/error.hpp"
#include "pseudoherm/linalg.hpp"

namespace pseudoherm {
namespace {

void require_paired(const SpectralDecomposition& dec) {
  for (const auto& g : dec.groups) {
    if (g.kind == GroupKind::Unpaired) {
      std::ostringstream msg;
      msg << "complex eigenvalue " << g.spec.eigenvalue << " has no conjugate partner; H is not pseudo-Hermitian";
      fail(ErrorCode::NotPaired, msg.str());
    }
  }
}

// Calls f(g, partner) once per independent label owner: real groups with
// partner == g, Plus members with their Minus partner.
template <class F>
void for_each_owner(const SpectralDecomposition& dec, F f) {
  require_paired(dec);
  for (std::size_t g = 0; g < dec.groups.size(); ++g) {
    const GroupKind k = dec.groups[g].kind;
    if (k == GroupKind::Real) f(g, g);
    if (k == GroupKind::PlusMember) f(g, dec.partner(g));
  }
}

std::size_t block_dim(const SpectralDecomposition& dec, std::size_t g, std::size_t a) {
  return dec.groups[g].spec.block_dims[a];
}

// Coefficient matrix W of the parity, P = phi W phi^dagger: the intra-chain
// index reversal, crossed between the two members of a pair.
CMatrix parity_weights(const SpectralDecomposition& dec, const SignSequence& sigma) {
  CMatrix w(dec.n);
  for_each_owner(dec, [&](std::size_t g, std::size_t h) {
    for (std::size_t a = 0; a < dec.groups[g].spec.block_dims.size(); ++a) {
      const std::size_t p = block_dim(dec, g, a);
      const double s = sigma.at(g, a);
      const std::size_t og = dec.offset(g, a);
      const std::size_t oh = dec.offset(h, a);
      for (std::size_t i = 0; i < p; ++i) {
        w(og + p - 1 - i, oh + i) = s;
        if (h != g) w(oh + p - 1 - i, og + i) = s;
      }
    }
  });
  return w;
}

CMatrix hermitian_part(const CMatrix& a) { return 0.5 * (a + a.adjoint()); }

}  // namespace

SignSequence SignSequence::uniform(const SpectralDecomposition& dec, int value) {
  if (value != 1 && value != -1) fail(ErrorCode::InvalidArgument, "signs must be +1 or -1");
  SignSequence s;
  for (const auto& g : dec.groups) s.signs.emplace_back(g.spec.block_dims.size(), value);
  return s;
}

SignSequence SignSequence::from_labels(const SpectralDecomposition& dec, const std::vector<int>& labels) {
  SignSequence s = uniform(dec, 1);
  std::size_t k = 0;
  for_each_owner(dec, [&](std::size_t g, std::size_t h) {
    for (std::size_t a = 0; a < s.signs[g].size(); ++a) {
      if (k >= labels.size()) fail(ErrorCode::InvalidArgument, "too few signs for the decomposition");
      s.signs[g][a] = s.signs[h][a] = labels[k++];
    }
  });
  if (k != labels.size()) fail(ErrorCode::InvalidArgument, "too many signs for the decomposition");
  s.validate(dec);
  return s;
}

std::vector<int> SignSequence::labels(const SpectralDecomposition& dec) const {
  validate(dec);
  std::vector<int> out;
  for_each_owner(dec, [&](std::size_t g, std::size_t) {
    for (int v : signs[g]) out.push_back(v);
  });
  return out;
}

void SignSequence::validate(const SpectralDecomposition& dec) const {
  if (signs.size() != dec.groups.size()) fail(ErrorCode::InvalidArgument, "sign sequence does not match the group count");
  for (std::size_t g = 0; g < signs.size(); ++g) {
    if (signs[g].size() != dec.groups[g].spec.block_dims.size())
      fail(ErrorCode::InvalidArgument, "sign sequence does not match the block count of a group");
    for (int v : signs[g])
      if (v != 1 && v != -1) fail(ErrorCode::InvalidArgument, "signs must be +1 or -1");
  }
  for (std::size_t g = 0; g < signs.size(); ++g) {
    const std::size_t h = dec.partner(g);
    if (h != std::string::npos && signs[g] != signs[h])
      fail(ErrorCode::InvalidArgument, "both members of a conjugate pair must carry the same signs");
  }
}

CVector AntilinearOp::apply(std::span<const cplx> v) const { return m * pseudoherm::conj(v); }

CVector SymmetryOperator::apply(std::span<const cplx> v) const {
  return antilinear ? m * pseudoherm::conj(v) : m * v;
}

SymmetryOperator antilinear_compose(const SymmetryOperator& a, const SymmetryOperator& b) {
  if (!a.m.is_square() || !b.m.is_square() || a.dim() != b.dim())
    fail(ErrorCode::DimensionMismatch, "compose: operator dimensions differ");
  // (M K)(L) v = M conj(L v) = M conj(L) conj(v)
  const CMatrix rhs = a.antilinear ? b.m.conj() : b.m;
  return {a.m * rhs, a.antilinear != b.antilinear};
}

AntilinearOp antilinear_adjoint(const AntilinearOp& a) { return {a.m.transpose()}; }

CMatrix build_parity(const SpectralDecomposition& dec, const SignSequence& sigma) {
  sigma.validate(dec);
  return hermitian_part(dec.phi * parity_weights(dec, sigma) * dec.phi.adjoint());
}

CMatrix build_parity(const SpectralDecomposition& dec) { return build_parity(dec, canonical_sign_sequence(dec)); }

CMatrix build_charge(const SpectralDecomposition& dec, const SignSequence& sigma) {
  sigma.validate(dec);
  require_paired(dec);
  CVector d(dec.n);
  for (std::size_t g = 0; g < dec.groups.size(); ++g)
    for (std::size_t a = 0; a < dec.groups[g].spec.block_dims.size(); ++a)
      for (std::size_t i = 0; i < block_dim(dec, g, a); ++i) d[dec.offset(g, a) + i] = sigma.at(g, a);
  return dec.psi * CMatrix::diagonal(d) * dec.phi.adjoint();
}

CMatrix build_charge(const SpectralDecomposition& dec) { return build_charge(dec, canonical_sign_sequence(dec)); }

AntilinearOp build_time_reversal(const SpectralDecomposition& dec) {
  require_paired(dec);
  CMatrix w(dec.n);
  for (std::size_t g = 0; g < dec.groups.size(); ++g) {
    for (std::size_t a = 0; a < dec.groups[g].spec.block_dims.size(); ++a) {
      const std::size_t p = block_dim(dec, g, a);
      const std::size_t o = dec.offset(g, a);
      for (std::size_t i = 0; i < p; ++i) w(o + i, o + p - 1 - i) = 1.0;
    }
  }
  const CMatrix m = dec.psi * w * dec.psi.transpose();
  // complex symmetric by construction; remove the rounding asymmetry
  return {0.5 * (m + m.transpose())};
}

AntilinearOp build_ctp(const SpectralDecomposition& dec, const SignSequence& sigma, const SignSequence& sigma_prime) {
  sigma.validate(dec);
  sigma_prime.validate(dec);
  CMatrix w(dec.n);
  for_each_owner(dec, [&](std::size_t g, std::size_t h) {
    for (std::size_t a = 0; a < dec.groups[g].spec.block_dims.size(); ++a) {
      const double s = sigma.at(g, a) * sigma_prime.at(g, a);
      const std::size_t og = dec.offset(g, a);
      const std::size_t oh = dec.offset(h, a);
      for (std::size_t i = 0; i < block_dim(dec, g, a); ++i) {
        w(og + i, oh + i) = s;
        w(oh + i, og + i) = s;
      }
    }
  });
  return {dec.psi * w * dec.phi.transpose()};
}

AntilinearOp build_tp(const SpectralDecomposition& dec, const SignSequence& sigma) {
  return build_ctp(dec, sigma, SignSequence::uniform(dec, 1));
}

AntilinearOp build_tp(const SpectralDecomposition& dec) { return build_tp(dec, canonical_sign_sequence(dec)); }

AntilinearOp build_ctp(const SpectralDecomposition& dec) {
  const SignSequence s = canonical_sign_sequence(dec);
  return build_ctp(dec, s, s);
}

CMatrix build_positive_metric(const SpectralDecomposition& dec) {
  if (!dec.all_real())
    fail(ErrorCode::NotDiagonalizableReal,
         "no positive definite metric: the spectrum is not real (Theorem 1)");
  if (!dec.diagonalizable())
    fail(ErrorCode::NotDiagonalizableReal,
         "no positive definite metric: H is not diagonalizable (Theorem 1)");
  return hermitian_part(dec.phi * dec.phi.adjoint());
}

SignSequence canonical_sign_sequence(const SpectralDecomposition& dec) {
  SignSequence s = SignSequence::uniform(dec, 1);
  int next = 1;
  for (std::size_t g = 0; g < dec.groups.size(); ++g) {
    if (dec.groups[g].kind != GroupKind::Real) continue;
    for (std::size_t a = 0; a < s.signs[g].size(); ++a) {
      if (block_dim(dec, g, a) % 2 == 0) continue;
      s.signs[g][a] = next;
      next = -next;
    }
  }
  return s;
}

std::vector<BlockPairing> pair_real_blocks(const SpectralDecomposition& dec) {
  std::vector<BlockPairing> out;
  for (std::size_t g = 0; g < dec.groups.size(); ++g) {
    if (dec.groups[g].kind != GroupKind::Real) continue;
    const auto& dims = dec.groups[g].spec.block_dims;
    BlockPairing bp;
    bp.group = g;
    std::size_t a = 0;
    while (a < dims.size()) {
      if (a + 1 < dims.size() && dims[a] == dims[a + 1]) {
        bp.pairs.emplace_back(a, a + 1);
        a += 2;
      } else {
        bp.unpaired.push_back(a++);
      }
    }
    out.push_back(std::move(bp));
  }
  return out;
}

namespace {

std::vector<BlockPairing> require_real_pairs(const SpectralDecomposition& dec) {
  require_paired(dec);
  auto pairing = pair_real_blocks(dec);
  for (const auto& bp : pairing) {
    if (bp.unpaired.empty()) continue;
    std::ostringstream msg;
    msg << "real eigenvalue " << dec.groups[bp.group].spec.eigenvalue.real() << " has Jordan blocks of dimension";
    for (std::size_t a : bp.unpaired) msg << ' ' << block_dim(dec, bp.group, a);
    msg << " without an identical partner; no P-reflecting operator or antilinear T with T^2 = -1 exists"
        << " (Proposition 4, Theorem 2)";
    fail(ErrorCode::UnpairedRealBlocks, msg.str());
  }
  return pairing;
}

}  // namespace

Reflecting build_reflecting(const SpectralDecomposition& dec) {
  const auto pairing = require_real_pairs(dec);
  CMatrix wr(dec.n);
  SignSequence sigma = SignSequence::uniform(dec, 1);
  for (const auto& bp : pairing) {
    for (auto [a, b] : bp.pairs) {
      sigma.signs[bp.group][b] = -1;
      const std::size_t oa = dec.offset(bp.group, a);
      const std::size_t ob = dec.offset(bp.group, b);
      for (std::size_t i = 0; i < block_dim(dec, bp.group, a); ++i) {
        wr(oa + i, ob + i) = 1.0;
        wr(ob + i, oa + i) = 1.0;
      }
    }
  }
  for (std::size_t g = 0; g < dec.groups.size(); ++g) {
    const GroupKind k = dec.groups[g].kind;
    if (k == GroupKind::Real) continue;
    const double s = k == GroupKind::PlusMember ? 1.0 : -1.0;
    for (std::size_t i = 0; i < dec.groups[g].spec.algebraic_multiplicity(); ++i)
      wr(dec.groups[g].offset + i, dec.groups[g].offset + i) = s;
  }
  return {dec.psi * wr * dec.phi.adjoint(), build_parity(dec, sigma)};
}

AntilinearOp build_quaternionic_T(const SpectralDecomposition& dec) {
  const auto pairing = require_real_pairs(dec);
  CMatrix w(dec.n);
  for (const auto& bp : pairing) {
    for (auto [a, b] : bp.pairs) {
      const std::size_t oa = dec.offset(bp.group, a);
      const std::size_t ob = dec.offset(bp.group, b);
      for (std::size_t i = 0; i < block_dim(dec, bp.group, a); ++i) {
        w(oa + i, ob + i) = 1.0;
        w(ob + i, oa + i) = -1.0;
      }
    }
  }
  for (std::size_t g = 0; g < dec.groups.size(); ++g) {
    if (dec.groups[g].kind != GroupKind::PlusMember) continue;
    const std::size_t h = dec.partner(g);
    for (std::size_t i = 0; i < dec.groups[g].spec.algebraic_multiplicity(); ++i) {
      w(dec.groups[g].offset + i, dec.groups[h].offset + i) = 1.0;
      w(dec.groups[h].offset + i, dec.groups[g].offset + i) = -1.0;
    }
  }
  return {dec.psi * w * dec.phi.transpose()};
}

bool involutory_symmetry_exists(const SpectralDecomposition& dec) { return dec.block_count() >= 2; }

InvolutionSplit canonical_involution(const CMatrix& c, const Tolerance& tol) {
  tol.validate();
  if (!c.is_square()) fail(ErrorCode::DimensionMismatch, "canonical_involution: matrix is not square");
  const std::size_t n = c.rows();
  const CMatrix id = CMatrix::identity(n);
  const double scale = std::max(1.0, c.frobenius_norm() * c.frobenius_norm());
  if (distance(c * c, id) > tol.threshold(n, scale)) fail(ErrorCode::NotInvolutory, "C^2 differs from the identity");
  InvolutionSplit out;
  out.plus = n - rank(c - id, tol);
  out.minus = n - rank(c + id, tol);
  if (out.plus + out.minus != n)
    fail(ErrorCode::NotInvolutory, "eigenspaces of +1 and -1 do not span the space");
  return out;
}

}  // namespace pseudoherm
