#include "pseudoherm/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pseudoherm/error.hpp"
#include "pseudoherm/linalg.hpp"

namespace pseudoherm {
namespace {

const cplx kI{0.0, 1.0};

double metric_norm2(const CMatrix& metric, std::span<const cplx> v) { return dotc(v, metric * v).real(); }

CVector normalized(const CMatrix& metric, std::span<const cplx> v) {
  const double nn = metric_norm2(metric, v);
  if (!(nn > 0.0)) fail(ErrorCode::InvalidArgument, "state has zero norm in the metric");
  CVector out(v.begin(), v.end());
  for (auto& z : out) z /= std::sqrt(nn);
  return out;
}


using xcplx = std::complex<long double>;

// Row-major n x n product in extended precision.
std::vector<xcplx> xmul(const std::vector<xcplx>& a, const std::vector<xcplx>& b, std::size_t n) {
  std::vector<xcplx> c(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const xcplx aik = a[i * n + k];
      if (aik == xcplx(0)) continue;
      for (std::size_t j = 0; j < n; ++j) c[i * n + j] += aik * b[k * n + j];
    }
  return c;
}

long double xmax_abs(const std::vector<xcplx>& a) {
  long double m = 0;
  for (const xcplx& z : a) m = std::max(m, std::abs(z));
  return m;
}

// <psi(t)|metric|psi(t)> with psi(t) = exp(-i H t) psi carried in long double
// (scaling, Taylor series, squaring). For a growing state the Krein norm is a
// small difference of terms of size ||psi(t)||^2, which double precision
// cannot resolve once the growth exceeds about 1e8.
double krein_norm_extended(const CMatrix& h, const CMatrix& metric, std::span<const cplx> psi, double t) {
  const std::size_t n = h.rows();
  const double norm = h.norm1() * std::abs(t);
  if (norm > kDefaultExpmBound) fail(ErrorCode::Overflow, "evolution: ||H t|| exceeds the configured bound");
  int squarings = 0;
  while (std::ldexp(norm, -squarings) > 0.5) ++squarings;
  const xcplx scale(0.0L, -static_cast<long double>(t) / std::ldexp(1.0L, squarings));
  std::vector<xcplx> b(n * n), e(n * n), term(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) b[i * n + j] = scale * xcplx(h(i, j));
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] = term[i * n + i] = 1.0L;
  for (int k = 1; k <= 60; ++k) {
    term = xmul(term, b, n);
    for (auto& z : term) z /= static_cast<long double>(k);
    for (std::size_t i = 0; i < n * n; ++i) e[i] += term[i];
    if (xmax_abs(term) <= std::numeric_limits<long double>::epsilon() * xmax_abs(e)) break;
  }
  for (int k = 0; k < squarings; ++k) e = xmul(e, e, n);
  std::vector<xcplx> state(n), weighted(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) state[i] += e[i * n + j] * xcplx(psi[j]);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) weighted[i] += xcplx(metric(i, j)) * state[j];
  long double k = 0;
  for (std::size_t i = 0; i < n; ++i) k += (std::conj(state[i]) * weighted[i]).real();
  if (!std::isfinite(static_cast<double>(k))) fail(ErrorCode::Overflow, "evolution: state overflowed");
  return static_cast<double>(k);
}

}  // namespace

CMatrix propagator(const CMatrix& h, double t) {
  if (!std::isfinite(t)) fail(ErrorCode::InvalidArgument, "propagator: time is not finite");
  return expm(cplx(0.0, -t) * h);
}

void EvolutionRequest::validate() const {
  if (!h.is_square() || h.empty()) fail(ErrorCode::DimensionMismatch, "Hamiltonian must be square and non-empty");
  if (metric.rows() != h.rows() || !metric.is_square())
    fail(ErrorCode::DimensionMismatch, "metric does not match the Hamiltonian");
  if (initial.size() != h.rows()) fail(ErrorCode::DimensionMismatch, "initial state does not match the Hamiltonian");
  if (norm2(initial) == 0.0) fail(ErrorCode::InvalidArgument, "initial state is zero");
  if (times.empty()) fail(ErrorCode::InvalidArgument, "time grid is empty");
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (!std::isfinite(times[k])) fail(ErrorCode::InvalidArgument, "time grid has a non-finite entry");
    if (k > 0 && !(times[k] > times[k - 1])) fail(ErrorCode::InvalidArgument, "time grid must be strictly increasing");
  }
}

std::vector<double> time_grid(double t0, double t1, std::size_t steps) {
  if (steps == 0) fail(ErrorCode::InvalidArgument, "time grid needs at least one step");
  if (steps == 1) return {t0};
  if (!(t1 > t0)) fail(ErrorCode::InvalidArgument, "time grid needs t1 > t0 for more than one step");
  std::vector<double> out(steps);
  const double dt = (t1 - t0) / static_cast<double>(steps - 1);
  for (std::size_t k = 0; k < steps; ++k) out[k] = t0 + dt * static_cast<double>(k);
  out.back() = t1;
  return out;
}

std::vector<double> transition_probability(const EvolutionRequest& req, std::span<const cplx> final_state,
                                           const Tolerance& tol) {
  req.validate();
  if (final_state.size() != req.h.rows()) fail(ErrorCode::DimensionMismatch, "final state does not match the Hamiltonian");
  if (!is_hermitian(req.metric, tol) || !is_positive_definite(req.metric, tol))
    fail(ErrorCode::IndefiniteMetric, "transition probabilities need a positive definite metric");
  const CVector from = normalized(req.metric, req.initial);
  const CVector to = normalized(req.metric, final_state);
  const CVector bra = req.metric * to;  // eta |final>, so <final|eta U|from> = <bra|U from>
  std::vector<double> out;
  out.reserve(req.times.size());
  for (double t : req.times) out.push_back(std::norm(dotc(bra, propagator(req.h, t) * from)));
  return out;
}

std::vector<double> krein_norm_series(const EvolutionRequest& req, const Tolerance& tol) {
  req.validate();
  if (!is_pseudo_hermitian(req.h, req.metric, tol))
    fail(ErrorCode::NotPseudoHermitian, "H is not pseudo-Hermitian with respect to the metric");
  std::vector<double> out;
  out.reserve(req.times.size());
  for (double t : req.times) out.push_back(krein_norm_extended(req.h, req.metric, req.initial, t));
  return out;
}

std::vector<double> euclidean_norm_series(const EvolutionRequest& req) {
  req.validate();
  std::vector<double> out;
  out.reserve(req.times.size());
  for (double t : req.times) {
    const double n = norm2(propagator(req.h, t) * req.initial);
    out.push_back(n * n);
  }
  return out;
}

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::RealNondegenerate: return "RealNondegenerate";
    case Regime::ComplexPair: return "ComplexPair";
    case Regime::JordanBlock: return "JordanBlock";
    case Regime::Scalar: return "Scalar";
  }
  return "?";
}

MashhoonPapini mashhoon_papini(const MashhoonPapiniParams& p) {
  if (!std::isfinite(p.e) || !std::isfinite(p.r) || !std::isfinite(p.s))
    fail(ErrorCode::InvalidArgument, "model parameters must be finite");
  MashhoonPapini out;
  out.h = CMatrix{{p.e, kI * p.r}, {-kI * p.s, p.e}};
  const double rs = p.r * p.s;
  const double root2 = std::sqrt(2.0);
  std::vector<EigenGroup> groups;
  CMatrix psi(2), phi(2);

  if (rs > 0.0) {
    out.regime = Regime::RealNondegenerate;
    const double c = std::sqrt(p.r / p.s);
    const double shift = std::copysign(std::sqrt(rs), p.s);
    psi = CMatrix{{kI * c / root2, -kI * c / root2}, {1.0 / root2, 1.0 / root2}};
    phi = CMatrix{{kI / (c * root2), -kI / (c * root2)}, {1.0 / root2, 1.0 / root2}};
    groups.push_back({{p.e + shift, {1}}, GroupKind::Real, -1, 0});
    groups.push_back({{p.e - shift, {1}}, GroupKind::Real, -1, 0});
  } else if (rs < 0.0) {
    out.regime = Regime::ComplexPair;
    const double c = std::sqrt(std::abs(p.r / p.s));
    const cplx e1{p.e, -std::copysign(std::sqrt(-rs), p.r)};
    psi = CMatrix{{-c / root2, c / root2}, {1.0 / root2, 1.0 / root2}};
    phi = CMatrix{{-1.0 / (c * root2), 1.0 / (c * root2)}, {1.0 / root2, 1.0 / root2}};
    groups.push_back({{e1, {1}}, GroupKind::PlusMember, 0, 0});
    groups.push_back({{std::conj(e1), {1}}, GroupKind::MinusMember, 0, 0});
  } else if (p.r != 0.0 || p.s != 0.0) {
    out.regime = Regime::JordanBlock;
    if (p.s == 0.0) {
      psi = CMatrix{{1.0, kI / p.r}, {0.0, -kI / p.r}};
      phi = CMatrix{{1.0, 0.0}, {1.0, -kI * p.r}};
    } else {
      psi = CMatrix{{0.0, kI / p.s}, {1.0, -kI / p.s}};
      phi = CMatrix{{1.0, kI * p.s}, {1.0, 0.0}};
    }
    groups.push_back({{p.e, {2}}, GroupKind::Real, -1, 0});
  } else {
    out.regime = Regime::Scalar;
    psi = CMatrix::identity(2);
    phi = psi;
    groups.push_back({{p.e, {1, 1}}, GroupKind::Real, -1, 0});
  }
  // chi far from 1 makes psi badly conditioned, so the closed-form duals
  // replace the numerical inverse
  out.dec = make_decomposition(std::move(groups), std::move(psi), Tolerance{1e-300, 0.0});
  out.dec.phi = std::move(phi);
  return out;
}

}  // namespace pseudoherm
