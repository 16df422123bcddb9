#pragma once

#include <cstddef>
#include <vector>

#include "pseudoherm/cmatrix.hpp"
#include "pseudoherm/spectral.hpp"

namespace pseudoherm {

/// One sign per (group, block). The two members of a conjugate pair carry
/// the same signs; the Plus member's entry is the one that is read.
struct SignSequence {
  std::vector<std::vector<int>> signs;

  int at(std::size_t g, std::size_t a) const { return signs.at(g).at(a); }

  /// Every sign equal to `value` (+1 or -1).
  static SignSequence uniform(const SpectralDecomposition& dec, int value = 1);
  /// One sign per independent label, in group order: each block of a real
  /// group, then each block of a pair at its Plus member.
  static SignSequence from_labels(const SpectralDecomposition& dec, const std::vector<int>& labels);
  std::vector<int> labels(const SpectralDecomposition& dec) const;

  /// Throws InvalidArgument unless the shape matches dec, every value is
  /// +1 or -1 and pair members agree.
  void validate(const SpectralDecomposition& dec) const;
};

/// v -> m * conj(v)
struct AntilinearOp {
  CMatrix m;

  CVector apply(std::span<const cplx> v) const;
};

struct SymmetryOperator {
  CMatrix m;
  bool antilinear = false;

  static SymmetryOperator linear(CMatrix m) { return {std::move(m), false}; }
  static SymmetryOperator from(const AntilinearOp& a) { return {a.m, true}; }

  std::size_t dim() const { return m.rows(); }
  CVector apply(std::span<const cplx> v) const;
};

/// a after b.
SymmetryOperator antilinear_compose(const SymmetryOperator& a, const SymmetryOperator& b);
/// The adjoint of m K is m^T K: <x|A y> = <y|A^dagger x>.
AntilinearOp antilinear_adjoint(const AntilinearOp& a);

/// Generalized parity: Hermitian, and H is P-pseudo-Hermitian.
CMatrix build_parity(const SpectralDecomposition& dec, const SignSequence& sigma);
CMatrix build_parity(const SpectralDecomposition& dec);
/// Generalized charge conjugation: involutory, commutes with H.
CMatrix build_charge(const SpectralDecomposition& dec, const SignSequence& sigma);
CMatrix build_charge(const SpectralDecomposition& dec);
AntilinearOp build_time_reversal(const SpectralDecomposition& dec);
AntilinearOp build_tp(const SpectralDecomposition& dec, const SignSequence& sigma);
AntilinearOp build_tp(const SpectralDecomposition& dec);
/// C_sigma T P_sigma_prime
AntilinearOp build_ctp(const SpectralDecomposition& dec, const SignSequence& sigma, const SignSequence& sigma_prime);
AntilinearOp build_ctp(const SpectralDecomposition& dec);

/// Sum of |phi><phi| over all eigenvectors. Throws NotDiagonalizableReal
/// unless every group is real with unit blocks (Theorem 1).
CMatrix build_positive_metric(const SpectralDecomposition& dec);

/// Alternating +,- over odd-dimensional real blocks in group order; all
/// other labels +. The congruent involutory parity then has trace n mod 2.
SignSequence canonical_sign_sequence(const SpectralDecomposition& dec);

/// Blocks of one real group matched as identical pairs.
struct BlockPairing {
  std::size_t group = 0;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // (a, partner)
  std::vector<std::size_t> unpaired;                       // block indices left over
};

/// Consecutive equal blocks of every real group (blocks are sorted by
/// dimension) are paired; leftovers are listed in `unpaired`.
std::vector<BlockPairing> pair_real_blocks(const SpectralDecomposition& dec);

struct Reflecting {
  CMatrix r;       // involutory, commutes with H, r^dagger metric r = -metric
  CMatrix metric;  // parity with + on the first and - on the second block of each pair
};

/// Throws UnpairedRealBlocks when a real eigenvalue has a block without an
/// identical partner (Proposition 4).
Reflecting build_reflecting(const SpectralDecomposition& dec);
/// Antilinear symmetry squaring to -1 (Theorem 2); same precondition.
AntilinearOp build_quaternionic_T(const SpectralDecomposition& dec);

/// Proposition 1: true iff H has at least two independent eigenvectors.
bool involutory_symmetry_exists(const SpectralDecomposition& dec);

struct InvolutionSplit {
  std::size_t plus = 0;
  std::size_t minus = 0;
};

/// Multiplicities of +1 and -1 for an involution. Throws NotInvolutory when
/// c^2 != I or the two eigenspaces do not fill the space.
InvolutionSplit canonical_involution(const CMatrix& c, const Tolerance& tol = {});

}  // namespace pseudoherm
