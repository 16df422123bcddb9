#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "pseudoherm/cmatrix.hpp"
#include "pseudoherm/operators.hpp"
#include "pseudoherm/spectral.hpp"

namespace pseudoherm {

/// <psi| metric |phi>, conjugate-linear in psi.
cplx krein_inner(std::span<const cplx> psi, std::span<const cplx> phi, const CMatrix& metric);

struct KreinSpace {
  CMatrix metric;
  CMatrix plus_projector;   // onto the span of eigenvectors with positive eigenvalues
  CMatrix minus_projector;
  std::size_t n_plus = 0;
  std::size_t n_minus = 0;
};

/// Throws NonHermitianMetric or SingularMetric.
KreinSpace build_krein_space(const CMatrix& metric, const Tolerance& tol = {});

struct CongruenceResult {
  CMatrix s;        // sum |psi_k><u_k|
  CMatrix s_inv;    // sum |u_k><phi_k|
  CMatrix h_tilde;  // s^-1 H s, Jordan layout
  CMatrix p_tilde;  // s^dagger P s, involutory and Hermitian
  CMatrix c_tilde;  // s^-1 C s
  AntilinearOp t_tilde;  // s^-1 M_T (s^-1)^T
  CMatrix plus_projector;   // (I + p_tilde) / 2
  CMatrix minus_projector;  // (I - p_tilde) / 2
};

/// `basis_f` holds the orthonormal vectors u_k as columns in the column
/// order of dec.psi; the standard basis when absent.
CongruenceResult congruence_to_involutory(const SpectralDecomposition& dec, const SignSequence& sigma,
                                          const std::optional<CMatrix>& basis_f = std::nullopt,
                                          const Tolerance& tol = {});

enum class SymmetryClass { PUnitary, PAntiunitary, PPseudounitary, PPseudoantiunitary, None };

std::string_view to_string(SymmetryClass c);

/// Relative residuals ||X^dagger P X -+ P'|| / (||X||^2 ||P||) of the four
/// defining conditions (P' = P for linear X, P^T for antilinear X); the two
/// conditions that do not apply to the operator's linearity are empty.
struct Classification {
  SymmetryClass cls = SymmetryClass::None;
  std::optional<double> unitary, antiunitary, pseudounitary, pseudoantiunitary;
  double threshold = 0.0;  // best must be <= threshold, runner-up >= 10 * threshold
};

/// Throws SingularMetric, NonHermitianMetric or SingularOperator.
Classification classify(const SymmetryOperator& op, const CMatrix& metric, const Tolerance& tol = {});

struct AntiunitaryFactors {
  CMatrix u;        // V = (CTP) u
  CMatrix u_prime;  // V = (TP) u_prime
};

/// Splits a metric-antiunitary V with TP = TP_sigma and CTP = C_sigma TP_sigma.
/// Throws NotAntiunitary when classify does not return PAntiunitary.
AntiunitaryFactors factor_antiunitary(const AntilinearOp& v, const SpectralDecomposition& dec,
                                      const SignSequence& sigma, const CMatrix& metric, const Tolerance& tol = {});

/// Upper-triangular Toeplitz coefficients per (group, block):
/// coefficients[g][a][k] multiplies the k-th superdiagonal of block a.
struct CommutantParams {
  std::vector<std::vector<CVector>> coefficients;

  /// Leading coefficient `leading[g]` on every block of group g, zeros above.
  static CommutantParams diagonal(const SpectralDecomposition& dec, const CVector& leading);
};

/// psi (direct sum of Toeplitz blocks) phi^dagger; commutes with H.
/// Throws ZeroLeadingCoefficient or InvalidArgument on shape mismatch.
CMatrix commutant_element(const SpectralDecomposition& dec, const CommutantParams& params);

struct PseudounitaryDecision {
  bool exists = false;
  std::vector<BlockPairing> violations;  // real groups with unpaired blocks
  double canonical_trace = 0.0;          // trace of the congruent parity under the canonical signs
  std::optional<Reflecting> reflecting;
  std::optional<AntilinearOp> quaternionic_t;
};

PseudounitaryDecision pseudounitary_symmetries_exist(const SpectralDecomposition& dec);

}  // namespace pseudoherm
