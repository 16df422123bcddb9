#include "pseudoherm/cmatrix.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "pseudoherm/error.hpp"
#include "pseudoherm/kernels.hpp"

namespace pseudoherm {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::ClusterAmbiguity: return "ClusterAmbiguity";
    case ErrorCode::NotPaired: return "NotPaired";
    case ErrorCode::SingularBasis: return "SingularBasis";
    case ErrorCode::SingularMetric: return "SingularMetric";
    case ErrorCode::NonHermitianMetric: return "NonHermitianMetric";
    case ErrorCode::NotDiagonalizableReal: return "NotDiagonalizableReal";
    case ErrorCode::UnpairedRealBlocks: return "UnpairedRealBlocks";
    case ErrorCode::NotInvolutory: return "NotInvolutory";
    case ErrorCode::NotAntiunitary: return "NotAntiunitary";
    case ErrorCode::SingularOperator: return "SingularOperator";
    case ErrorCode::ZeroLeadingCoefficient: return "ZeroLeadingCoefficient";
    case ErrorCode::IndefiniteMetric: return "IndefiniteMetric";
    case ErrorCode::NotPseudoHermitian: return "NotPseudoHermitian";
    case ErrorCode::Parse: return "Parse";
  }
  return "Unknown";
}

void Tolerance::validate() const {
  if (!(abs >= 0.0) || !(rel >= 0.0) || !std::isfinite(abs) || !std::isfinite(rel) || (abs == 0.0 && rel == 0.0)) {
    fail(ErrorCode::InvalidArgument, "tolerance needs abs >= 0, rel >= 0, not both zero");
  }
}

Tolerance parse_tolerance(const std::string& text) {
  Tolerance tol;
  try {
    std::size_t used = 0;
    const auto comma = text.find(',');
    if (comma == std::string::npos) {
      tol.abs = tol.rel = std::stod(text, &used);
      if (used != text.size()) throw std::invalid_argument("trailing characters");
    } else {
      const std::string a = text.substr(0, comma), r = text.substr(comma + 1);
      tol.abs = std::stod(a, &used);
      if (used != a.size()) throw std::invalid_argument("trailing characters");
      tol.rel = std::stod(r, &used);
      if (used != r.size()) throw std::invalid_argument("trailing characters");
    }
  } catch (const std::exception&) {
    fail(ErrorCode::Parse, "tolerance must be 'x' or 'abs,rel', got '" + text + "'");
  }
  tol.validate();
  return tol;
}

Tolerance default_tolerance() {
  const char* env = std::getenv("PSEUDOHERM_TOL");
  if (env == nullptr || *env == '\0') return Tolerance{};
  return parse_tolerance(env);
}

CMatrix::CMatrix(std::initializer_list<std::initializer_list<cplx>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) fail(ErrorCode::DimensionMismatch, "ragged matrix initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::diagonal(std::span<const cplx> diag) {
  CMatrix m(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

CMatrix CMatrix::from_columns(const std::vector<CVector>& cols) {
  if (cols.empty()) return {};
  CMatrix m(cols.front().size(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) m.set_col(j, cols[j]);
  return m;
}

CVector CMatrix::col(std::size_t j) const {
  CVector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

void CMatrix::set_col(std::size_t j, std::span<const cplx> v) {
  if (v.size() != rows_) fail(ErrorCode::DimensionMismatch, "column length mismatch");
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

CMatrix CMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) fail(ErrorCode::DimensionMismatch, "block out of range");
  CMatrix b(nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
  return b;
}

CMatrix CMatrix::adjoint() const {
  CMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = std::conj((*this)(i, j));
  return t;
}

CMatrix CMatrix::transpose() const {
  CMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

CMatrix CMatrix::conj() const {
  CMatrix c = *this;
  for (auto& z : c.data_) z = std::conj(z);
  return c;
}

double CMatrix::frobenius_norm() const { return std::sqrt(kernels::active().norm2sq(data_.size(), data_.data())); }

double CMatrix::norm1() const {
  double best = 0.0;
  for (std::size_t j = 0; j < cols_; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) s += std::abs((*this)(i, j));
    best = std::max(best, s);
  }
  return best;
}

double CMatrix::max_abs() const {
  double best = 0.0;
  for (const auto& z : data_) best = std::max(best, std::abs(z));
  return best;
}

bool CMatrix::all_finite() const {
  for (const auto& z : data_)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

cplx CMatrix::trace() const {
  cplx t{};
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

CMatrix& CMatrix::operator+=(const CMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) fail(ErrorCode::DimensionMismatch, "matrix sum shape mismatch");
  kernels::active().axpy(data_.size(), 1.0, o.data_.data(), data_.data());
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) fail(ErrorCode::DimensionMismatch, "matrix difference shape mismatch");
  kernels::active().axpy(data_.size(), -1.0, o.data_.data(), data_.data());
  return *this;
}

CMatrix& CMatrix::operator*=(cplx s) {
  for (auto& z : data_) z *= s;
  return *this;
}

CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
CMatrix operator*(cplx s, CMatrix a) { return a *= s; }

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows()) fail(ErrorCode::DimensionMismatch, "matrix product shape mismatch");
  CMatrix c(a.rows(), b.cols());
  kernels::active().gemm(a.rows(), b.cols(), a.cols(), a.data(), b.data(), c.data());
  return c;
}

CVector operator*(const CMatrix& a, std::span<const cplx> x) {
  if (a.cols() != x.size()) fail(ErrorCode::DimensionMismatch, "matrix-vector shape mismatch");
  CVector y(a.rows());
  kernels::active().gemm(a.rows(), 1, a.cols(), a.data(), x.data(), y.data());
  return y;
}

CMatrix outer(std::span<const cplx> a, std::span<const cplx> b) {
  CMatrix m(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) m(i, j) = a[i] * std::conj(b[j]);
  return m;
}

CMatrix outer_t(std::span<const cplx> a, std::span<const cplx> b) {
  CMatrix m(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) m(i, j) = a[i] * b[j];
  return m;
}

cplx dotc(std::span<const cplx> x, std::span<const cplx> y) {
  if (x.size() != y.size()) fail(ErrorCode::DimensionMismatch, "inner product length mismatch");
  return kernels::active().dotc(x.size(), x.data(), y.data());
}

double norm2(std::span<const cplx> x) { return std::sqrt(kernels::active().norm2sq(x.size(), x.data())); }

CVector conj(std::span<const cplx> x) {
  CVector c(x.begin(), x.end());
  for (auto& z : c) z = std::conj(z);
  return c;
}

double distance(const CMatrix& a, const CMatrix& b) { return (a - b).frobenius_norm(); }

}  // namespace pseudoherm
