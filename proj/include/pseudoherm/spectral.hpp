#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pseudoherm/cmatrix.hpp"

namespace pseudoherm {

struct JordanBlockSpec {
  cplx eigenvalue;
  std::vector<std::size_t> block_dims;

  std::size_t algebraic_multiplicity() const;
};

/// Real eigenvalue, member of a complex-conjugate pair, or a complex
/// eigenvalue with no partner (only produced by synthesize on request).
enum class GroupKind { Real, PlusMember, MinusMember, Unpaired };

std::string_view to_string(GroupKind kind);

struct EigenGroup {
  JordanBlockSpec spec;
  GroupKind kind = GroupKind::Real;
  int pair_id = -1;         // shared by the two members of a pair
  std::size_t offset = 0;   // first basis column of the group
};

/// Biorthonormal Jordan-chain basis of a matrix H. Column
/// offset(g, a) + i of `psi` holds chain vector i (0-based) of block a of
/// group g; `phi` holds the dual vectors, so phi^dagger psi = I and
/// H = psi J phi^dagger with J the Jordan matrix in that column order.
struct SpectralDecomposition {
  std::size_t n = 0;
  std::vector<EigenGroup> groups;
  CMatrix psi;
  CMatrix phi;
  std::vector<std::string> warnings;

  std::size_t block_count() const;
  std::size_t offset(std::size_t g, std::size_t a) const;
  CVector psi_vec(std::size_t g, std::size_t a, std::size_t i) const { return psi.col(offset(g, a) + i); }
  CVector phi_vec(std::size_t g, std::size_t a, std::size_t i) const { return phi.col(offset(g, a) + i); }
  /// Index of the other member of a pair, or npos for Real / Unpaired groups.
  std::size_t partner(std::size_t g) const;

  CMatrix jordan_matrix() const;
  /// psi J phi^dagger
  CMatrix reconstruct() const;

  bool all_real() const;
  bool diagonalizable() const;
};

/// Lays out groups (offsets filled in) and computes phi = (psi^-1)^dagger.
/// Throws SingularBasis when psi is not invertible at tolerance.
SpectralDecomposition make_decomposition(std::vector<EigenGroup> groups, CMatrix psi, const Tolerance& tol = {});

struct AnalyzeOptions {
  /// When positive, eigenvalues closer than this are merged unconditionally
  /// (single linkage); otherwise clusters are found by the nilpotency test.
  double cluster_radius = 0.0;
  std::size_t max_dim = kDefaultMaxDim;
};

/// Recovers groups, Jordan block sizes and chains from a raw matrix.
/// Throws ClusterAmbiguity when eigenvalue clusters cannot be separated and
/// NotPaired when a complex eigenvalue lacks a conjugate partner with the
/// same block structure.
SpectralDecomposition analyze(const CMatrix& h, const Tolerance& tol = {}, const AnalyzeOptions& opts = {});

struct SynthesisSpec {
  std::vector<JordanBlockSpec> groups;
  std::uint64_t seed = 0;
  std::optional<CMatrix> basis;  // explicit psi basis; overrides the seeded one
  double condition = 10.0;       // 2-norm condition number of the seeded basis
  bool pseudo_hermitian = true;  // require conjugate partners for complex groups
};

struct Synthesis {
  CMatrix h;
  SpectralDecomposition dec;
};

Synthesis synthesize(const SynthesisSpec& spec, const Tolerance& tol = {});

/// Random basis with singular values log-spaced in [1, condition].
CMatrix random_basis(std::size_t n, double condition, std::uint64_t seed);

struct BiorthonormalReport {
  double gram = 0.0;          // max |phi^dagger psi - I|
  double completeness = 0.0;  // max |psi phi^dagger - I|
};

BiorthonormalReport check_biorthonormal(const SpectralDecomposition& dec);

/// ||H psi - psi J||_F
double chain_residual(const SpectralDecomposition& dec, const CMatrix& h);

/// True iff ||eta H eta^-1 - H^dagger|| is within tolerance. Throws
/// NonHermitianMetric or SingularMetric for unusable metrics.
bool is_pseudo_hermitian(const CMatrix& h, const CMatrix& eta, const Tolerance& tol = {});

}  // namespace pseudoherm
