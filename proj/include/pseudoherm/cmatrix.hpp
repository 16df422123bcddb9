#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace pseudoherm {

using cplx = std::complex<double>;
using CVector = std::vector<cplx>;

inline constexpr std::size_t kDefaultMaxDim = 64;

/// Absolute/relative tolerance pair. For an operand of dimension n and
/// Frobenius norm a, the comparison threshold is abs + rel * n * a.
struct Tolerance {
  double abs = 1e-10;
  double rel = 1e-10;

  /// Throws InvalidArgument unless abs, rel >= 0 and not both zero.
  void validate() const;
  double threshold(std::size_t n, double scale) const { return abs + rel * static_cast<double>(n) * scale; }
};

/// "x" (both parts) or "abs,rel". Throws Parse or InvalidArgument.
Tolerance parse_tolerance(const std::string& text);

/// Reads PSEUDOHERM_TOL with parse_tolerance; falls back to the defaults.
Tolerance default_tolerance();

/// Dense row-major complex matrix. Most of the library works with square
/// instances; rectangular ones appear for bases of subspaces.
class CMatrix {
 public:
  CMatrix() = default;
  explicit CMatrix(std::size_t n) : CMatrix(n, n) {}
  CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  CMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static CMatrix identity(std::size_t n);
  static CMatrix diagonal(std::span<const cplx> diag);
  static CMatrix from_columns(const std::vector<CVector>& cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t dim() const noexcept { return rows_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return data_.empty(); }

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<cplx> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const cplx> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  std::span<cplx> values() { return data_; }
  std::span<const cplx> values() const { return data_; }
  cplx* data() noexcept { return data_.data(); }
  const cplx* data() const noexcept { return data_.data(); }

  CVector col(std::size_t j) const;
  void set_col(std::size_t j, std::span<const cplx> v);
  CMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  CMatrix leading_cols(std::size_t nc) const { return block(0, 0, rows_, nc); }

  CMatrix adjoint() const;
  CMatrix transpose() const;
  CMatrix conj() const;

  double frobenius_norm() const;
  double norm1() const;
  double max_abs() const;
  bool all_finite() const;
  cplx trace() const;

  CMatrix& operator+=(const CMatrix& o);
  CMatrix& operator-=(const CMatrix& o);
  CMatrix& operator*=(cplx s);

  friend bool operator==(const CMatrix&, const CMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

CMatrix operator+(CMatrix a, const CMatrix& b);
CMatrix operator-(CMatrix a, const CMatrix& b);
CMatrix operator*(const CMatrix& a, const CMatrix& b);
CMatrix operator*(cplx s, CMatrix a);
CVector operator*(const CMatrix& a, std::span<const cplx> x);

/// |a><b| (outer product a b^dagger).
CMatrix outer(std::span<const cplx> a, std::span<const cplx> b);
/// a b^T, the matrix part of the antilinear dyad |a> K <b|.
CMatrix outer_t(std::span<const cplx> a, std::span<const cplx> b);

cplx dotc(std::span<const cplx> x, std::span<const cplx> y);  // <x|y>
double norm2(std::span<const cplx> x);
CVector conj(std::span<const cplx> x);

/// Frobenius norm of (a - b).
double distance(const CMatrix& a, const CMatrix& b);

}  // namespace pseudoherm
