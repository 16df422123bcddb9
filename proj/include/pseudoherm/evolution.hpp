#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "pseudoherm/cmatrix.hpp"
#include "pseudoherm/spectral.hpp"

namespace pseudoherm {

/// U(t) = exp(-i H t), hbar = 1.
CMatrix propagator(const CMatrix& h, double t);

struct EvolutionRequest {
  CMatrix h;
  CMatrix metric;
  CVector initial;
  std::vector<double> times;  // strictly increasing

  /// Throws InvalidArgument / DimensionMismatch on malformed requests.
  void validate() const;
};

/// `steps` points from t0 to t1 inclusive (a single point when steps == 1).
std::vector<double> time_grid(double t0, double t1, std::size_t steps);

/// |<<final, U(t) initial>>|^2 with both states normalized in the metric.
/// Throws IndefiniteMetric unless the metric is positive definite.
std::vector<double> transition_probability(const EvolutionRequest& req, std::span<const cplx> final_state,
                                           const Tolerance& tol = {});

/// <<psi(t), psi(t)>> in the request metric. Throws NotPseudoHermitian when
/// H is not pseudo-Hermitian with respect to it.
std::vector<double> krein_norm_series(const EvolutionRequest& req, const Tolerance& tol = {});

/// ||psi(t)||^2, the contrast to the conserved Krein norm.
std::vector<double> euclidean_norm_series(const EvolutionRequest& req);

enum class Regime { RealNondegenerate, ComplexPair, JordanBlock, Scalar };

std::string_view to_string(Regime r);

struct MashhoonPapiniParams {
  double e = 0.0;
  double r = 0.0;
  double s = 0.0;
};

struct MashhoonPapini {
  CMatrix h;  // [[E, i r], [-i s, E]]
  Regime regime = Regime::Scalar;
  SpectralDecomposition dec;
};

/// The 2x2 spin-rotation model with its hand-written biorthonormal basis:
///  rs > 0: psi_1,2 = (+-i chi^(1/2), 1)/sqrt2, phi_1,2 = (+-i chi^(-1/2), 1)/sqrt2, chi = r/s;
///  rs < 0: psi_1,2 = (-+|chi|^(1/2), 1)/sqrt2, phi likewise with |chi|^(-1/2),
///          psi_1 carried as the Plus member of the pair;
///  s = 0:  psi_1 = (1, 0), psi_2 = (i/r)(1, -1), phi_1 = (1, 1), phi_2 = ir(0, -1);
///  r = 0:  the same chain with the coordinates swapped and r -> -s;
///  r = s = 0: the standard basis.
MashhoonPapini mashhoon_papini(const MashhoonPapiniParams& p);

}  // namespace pseudoherm
