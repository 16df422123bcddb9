#include "pseudoherm/krein.hpp"

#include <algorithm>
#include <cmath>

#include "pseudoherm/error.hpp"
#include "pseudoherm/linalg.hpp"

namespace pseudoherm {
namespace {

void require_metric(const CMatrix& metric, const Tolerance& tol) {
  if (!metric.is_square() || metric.empty()) fail(ErrorCode::DimensionMismatch, "metric must be square and non-empty");
  if (!is_hermitian(metric, tol)) fail(ErrorCode::NonHermitianMetric, "metric is not Hermitian");
}

}  // namespace

cplx krein_inner(std::span<const cplx> psi, std::span<const cplx> phi, const CMatrix& metric) {
  if (psi.size() != metric.rows() || phi.size() != metric.cols())
    fail(ErrorCode::DimensionMismatch, "krein_inner: vector and metric dimensions differ");
  return dotc(psi, metric * phi);
}

KreinSpace build_krein_space(const CMatrix& metric, const Tolerance& tol) {
  tol.validate();
  require_metric(metric, tol);
  const std::size_t n = metric.rows();
  const HermitianEigen eig = eig_hermitian(metric);
  const double floor = tol.threshold(n, metric.frobenius_norm());
  KreinSpace ks;
  ks.metric = metric;
  ks.plus_projector = CMatrix(n);
  ks.minus_projector = CMatrix(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double lam = eig.values[k];
    if (std::abs(lam) <= floor) fail(ErrorCode::SingularMetric, "metric has an eigenvalue at zero");
    const CVector v = eig.vectors.col(k);
    if (lam > 0.0) {
      ks.plus_projector += outer(v, v);
      ++ks.n_plus;
    } else {
      ks.minus_projector += outer(v, v);
      ++ks.n_minus;
    }
  }
  return ks;
}

CongruenceResult congruence_to_involutory(const SpectralDecomposition& dec, const SignSequence& sigma,
                                          const std::optional<CMatrix>& basis_f, const Tolerance& tol) {
  tol.validate();
  const std::size_t n = dec.n;
  CMatrix u = basis_f ? *basis_f : CMatrix::identity(n);
  if (u.rows() != n || u.cols() != n) fail(ErrorCode::DimensionMismatch, "basis F does not match the decomposition");
  if (distance(u.adjoint() * u, CMatrix::identity(n)) > tol.threshold(n, 1.0))
    fail(ErrorCode::InvalidArgument, "basis F is not orthonormal");

  CongruenceResult out;
  out.s = dec.psi * u.adjoint();
  out.s_inv = u * dec.phi.adjoint();
  const CMatrix h = dec.reconstruct();
  out.h_tilde = out.s_inv * h * out.s;
  const CMatrix p = build_parity(dec, sigma);
  const CMatrix pt = out.s.adjoint() * p * out.s;
  out.p_tilde = 0.5 * (pt + pt.adjoint());
  out.c_tilde = out.s_inv * build_charge(dec, sigma) * out.s;
  out.t_tilde = {out.s_inv * build_time_reversal(dec).m * out.s_inv.transpose()};
  const CMatrix id = CMatrix::identity(n);
  out.plus_projector = 0.5 * (id + out.p_tilde);
  out.minus_projector = 0.5 * (id - out.p_tilde);
  return out;
}

std::string_view to_string(SymmetryClass c) {
  switch (c) {
    case SymmetryClass::PUnitary: return "PUnitary";
    case SymmetryClass::PAntiunitary: return "PAntiunitary";
    case SymmetryClass::PPseudounitary: return "PPseudounitary";
    case SymmetryClass::PPseudoantiunitary: return "PPseudoantiunitary";
    case SymmetryClass::None: return "None";
  }
  return "?";
}

Classification classify(const SymmetryOperator& op, const CMatrix& metric, const Tolerance& tol) {
  tol.validate();
  require_metric(metric, tol);
  const std::size_t n = metric.rows();
  if (!op.m.is_square() || op.dim() != n) fail(ErrorCode::DimensionMismatch, "operator and metric dimensions differ");
  try {
    inverse(metric, tol);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::Singular) throw;
    fail(ErrorCode::SingularMetric, "metric is singular");
  }
  if (rank(op.m, tol) < n) fail(ErrorCode::SingularOperator, "operator is not invertible");

  // For X = M K: <Xx|P Xy> = x^T (M^dagger P M) conj(y) while
  // <y|P|x> = x^T P^T conj(y), so the conditions read M^dagger P M = +-P^T.
  const CMatrix g = op.m.adjoint() * metric * op.m;
  const CMatrix ref = op.antilinear ? metric.transpose() : metric;
  const double scale = std::max(1e-300, op.m.frobenius_norm() * op.m.frobenius_norm() * metric.frobenius_norm());
  const double plus = distance(g, ref) / scale;
  const double minus = distance(g, -1.0 * ref) / scale;

  Classification out;
  out.threshold = tol.threshold(n, 1.0);
  if (op.antilinear) {
    out.antiunitary = plus;
    out.pseudoantiunitary = minus;
  } else {
    out.unitary = plus;
    out.pseudounitary = minus;
  }
  const double best = std::min(plus, minus);
  const double second = std::max(plus, minus);
  if (best <= out.threshold && second >= 10.0 * out.threshold) {
    if (op.antilinear)
      out.cls = plus <= minus ? SymmetryClass::PAntiunitary : SymmetryClass::PPseudoantiunitary;
    else
      out.cls = plus <= minus ? SymmetryClass::PUnitary : SymmetryClass::PPseudounitary;
  }
  return out;
}

AntiunitaryFactors factor_antiunitary(const AntilinearOp& v, const SpectralDecomposition& dec,
                                      const SignSequence& sigma, const CMatrix& metric, const Tolerance& tol) {
  if (classify(SymmetryOperator::from(v), metric, tol).cls != SymmetryClass::PAntiunitary)
    fail(ErrorCode::NotAntiunitary, "operator is not antiunitary in the given metric");
  const auto vv = SymmetryOperator::from(v);
  const auto tp = SymmetryOperator::from(build_tp(dec, sigma));
  const auto ctp = SymmetryOperator::from(build_ctp(dec, sigma, sigma));
  // both generators are involutions, so V = G W gives W = G V
  return {antilinear_compose(ctp, vv).m, antilinear_compose(tp, vv).m};
}

CommutantParams CommutantParams::diagonal(const SpectralDecomposition& dec, const CVector& leading) {
  if (leading.size() != dec.groups.size()) fail(ErrorCode::InvalidArgument, "one leading coefficient per group expected");
  CommutantParams p;
  for (std::size_t g = 0; g < dec.groups.size(); ++g) {
    p.coefficients.emplace_back();
    for (std::size_t dim : dec.groups[g].spec.block_dims) {
      CVector c(dim, 0.0);
      c[0] = leading[g];
      p.coefficients.back().push_back(std::move(c));
    }
  }
  return p;
}

CMatrix commutant_element(const SpectralDecomposition& dec, const CommutantParams& params) {
  if (params.coefficients.size() != dec.groups.size())
    fail(ErrorCode::InvalidArgument, "commutant parameters do not match the group count");
  CMatrix w(dec.n);
  for (std::size_t g = 0; g < dec.groups.size(); ++g) {
    const auto& dims = dec.groups[g].spec.block_dims;
    if (params.coefficients[g].size() != dims.size())
      fail(ErrorCode::InvalidArgument, "commutant parameters do not match the block count of a group");
    for (std::size_t a = 0; a < dims.size(); ++a) {
      const CVector& c = params.coefficients[g][a];
      if (c.size() != dims[a]) fail(ErrorCode::InvalidArgument, "Toeplitz coefficient list length must equal the block dimension");
      if (c[0] == cplx(0.0)) fail(ErrorCode::ZeroLeadingCoefficient, "leading Toeplitz coefficient is zero");
      const std::size_t o = dec.offset(g, a);
      for (std::size_t i = 0; i < dims[a]; ++i)
        for (std::size_t k = 0; i + k < dims[a]; ++k) w(o + i, o + i + k) = c[k];
    }
  }
  return dec.psi * w * dec.phi.adjoint();
}

PseudounitaryDecision pseudounitary_symmetries_exist(const SpectralDecomposition& dec) {
  PseudounitaryDecision out;
  for (auto& bp : pair_real_blocks(dec))
    if (!bp.unpaired.empty()) out.violations.push_back(std::move(bp));
  // the congruent parity is the signed index reversal, whose trace is the
  // sum of the signs on odd real blocks
  const SignSequence canonical = canonical_sign_sequence(dec);
  for (std::size_t g = 0; g < dec.groups.size(); ++g) {
    if (dec.groups[g].kind != GroupKind::Real) continue;
    for (std::size_t a = 0; a < dec.groups[g].spec.block_dims.size(); ++a)
      if (dec.groups[g].spec.block_dims[a] % 2 == 1) out.canonical_trace += canonical.at(g, a);
  }
  out.exists = out.violations.empty() && out.canonical_trace == 0.0;
  if (out.exists) {
    out.reflecting = build_reflecting(dec);
    out.quaternionic_t = build_quaternionic_T(dec);
  }
  return out;
}

}  // namespace pseudoherm
