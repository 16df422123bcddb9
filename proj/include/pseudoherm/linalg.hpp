#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pseudoherm/cmatrix.hpp"

namespace pseudoherm {

/// a = q * t * q^dagger with q unitary and t upper triangular.
struct SchurForm {
  CMatrix q;
  CMatrix t;
};

/// Complex Schur form by Householder reduction to Hessenberg form followed
/// by Wilkinson-shifted QR sweeps. Throws NonConvergence after 30n sweeps.
SchurForm schur(const CMatrix& a);

/// Swap the adjacent diagonal entries (k, k) and (k+1, k+1) of a Schur form
/// with a single unitary rotation.
void swap_schur_diagonal(SchurForm& s, std::size_t k);

/// Move the diagonal entries flagged in `select` to the leading positions,
/// keeping relative order. Returns the number of selected entries.
std::size_t reorder_schur(SchurForm& s, std::vector<bool> select);

/// Eigenvalues with multiplicity, in Schur diagonal order.
CVector eigenvalues(const CMatrix& a, const Tolerance& tol = {});

struct Svd {
  std::vector<double> sigma;  // descending
  CMatrix u;                  // rows x cols, columns for nonzero sigma are orthonormal
  CMatrix v;                  // cols x cols unitary
};

/// One-sided (Hestenes) Jacobi SVD.
Svd svd(const CMatrix& a);

/// Count of singular values above tol.threshold(n, sigma_max).
std::size_t rank(const CMatrix& a, const Tolerance& tol = {});
/// Count of singular values strictly above an explicit threshold.
std::size_t rank_above(const CMatrix& a, double threshold);
/// Orthonormal basis (as columns) of the numerical kernel at `threshold`.
CMatrix null_space(const CMatrix& a, double threshold);
/// Orthonormal basis of the column span at `threshold`.
CMatrix orthonormal_basis(const CMatrix& a, double threshold);

/// Partial-pivoted LU solve of a x = b. Throws Singular when a pivot falls
/// below tol.threshold(n, max |a_ij|).
CMatrix solve(const CMatrix& a, const CMatrix& b, const Tolerance& tol = {});
CMatrix inverse(const CMatrix& a, const Tolerance& tol = {});

inline constexpr double kDefaultExpmBound = 1e5;

/// Scaling-and-squaring with the degree 13 Pade approximant. Throws Overflow
/// when the 1-norm of a exceeds `max_norm` or the result is not finite.
CMatrix expm(const CMatrix& a, double max_norm = kDefaultExpmBound);

bool is_hermitian(const CMatrix& a, const Tolerance& tol = {});
/// Hermitian and smallest eigenvalue > tol.abs.
bool is_positive_definite(const CMatrix& a, const Tolerance& tol = {});

struct HermitianEigen {
  std::vector<double> values;  // ascending
  CMatrix vectors;             // matching orthonormal columns
};

HermitianEigen eig_hermitian(const CMatrix& a);

}  // namespace pseudoherm
