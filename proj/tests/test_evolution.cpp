#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <functional>

#include "pseudoherm/error.hpp"
#include "pseudoherm/evolution.hpp"
#include "pseudoherm/krein.hpp"
#include "pseudoherm/linalg.hpp"
#include "pseudoherm/operators.hpp"
#include "test_support.hpp"

using namespace pseudoherm;
using testsupport::Gen;

namespace {

const cplx I{0.0, 1.0};

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::InvalidArgument;
}

double diff(const CMatrix& a, const CMatrix& b) { return testsupport::max_entry_diff(a, b); }

EvolutionRequest request(const CMatrix& h, const CMatrix& metric, CVector initial, std::vector<double> times) {
  return {h, metric, std::move(initial), std::move(times)};
}

}  // namespace

TEST_CASE("propagator basics") {
  Gen g(3);
  const CMatrix h = g.matrix(4);
  CHECK(diff(propagator(h, 0.0), CMatrix::identity(4)) < 1e-15);
  CHECK(code_of([&] { propagator(h, NAN); }) == ErrorCode::InvalidArgument);

  // Hermitian H: unitary evolution
  const CMatrix herm = g.hermitian(4);
  const CMatrix u = propagator(herm, 1.3);
  CHECK(diff(u.adjoint() * u, CMatrix::identity(4)) < 1e-12);
}

TEST_CASE("property: propagator group law") {
  Gen g(5);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = static_cast<std::size_t>(g.integer(1, 6));
    CMatrix h = g.matrix(n);
    h = (g.uniform(0.1, 10.0) / h.frobenius_norm()) * h;
    const double t1 = g.uniform(-5.0, 5.0), t2 = g.uniform(-5.0, 5.0);
    const CMatrix u1 = propagator(h, t1), u2 = propagator(h, t2);
    const CMatrix rhs = propagator(h, t1 + t2);
    // the product is only as accurate as its factors are large
    const double scale = std::max({1.0, u1.frobenius_norm() * u2.frobenius_norm(), rhs.frobenius_norm()});
    CAPTURE(trial);
    CHECK(distance(u1 * u2, rhs) / scale < 1e-9);
  }
}

TEST_CASE("two-level evolution operator in the real regime") {
  for (const auto& [r, s] : std::vector<std::pair<double, double>>{{1.0, 1.0}, {2.0, 0.5}, {0.3, 1.7}}) {
    const double e = 0.4;
    const auto mp = mashhoon_papini({e, r, s});
    const double c = std::sqrt(r / s), w = std::sqrt(r * s);
    for (double t : {0.0, 0.8, 3.1, 12.0}) {
      const cplx ea = std::polar(1.0, -(e + w) * t), eb = std::polar(1.0, -(e - w) * t);
      const CMatrix ev = 0.5 * CMatrix{{ea + eb, I * c * (ea - eb)}, {-I * (ea - eb) / c, ea + eb}};
      CHECK(diff(propagator(mp.h, t), ev) < 1e-12);
    }
  }
}

TEST_CASE("property: evolution is pseudo-unitary for every admissible metric") {
  const std::vector<MashhoonPapiniParams> models{{1.0, 1.0, 1.0}, {0.2, 2.0, 0.5}, {1.0, 1.0, -1.0},
                                                 {0.0, -0.5, 2.0}, {1.0, 1.0, 0.0}, {-0.3, 0.0, 2.0}};
  for (const auto& params : models) {
    const auto mp = mashhoon_papini(params);
    std::vector<CMatrix> metrics{build_parity(mp.dec)};
    if (mp.regime == Regime::RealNondegenerate) metrics.push_back(build_positive_metric(mp.dec));
    for (const CMatrix& eta : metrics) {
      REQUIRE(is_pseudo_hermitian(mp.h, eta));
      for (double t : {0.5, 2.0, 7.5}) {
        const CMatrix u = propagator(mp.h, t);
        CHECK(testsupport::rel_distance(u.adjoint() * eta * u, eta) < 1e-9);
      }
    }
  }

  Gen g(7);
  for (int trial = 0; trial < 40; ++trial) {
    CAPTURE(trial);
    SynthesisSpec spec = testsupport::random_spec(g, 6, 2, 1e2);
    for (auto& grp : spec.groups) grp.eigenvalue = cplx(grp.eigenvalue.real(), 0.3 * grp.eigenvalue.imag());
    const auto syn = synthesize(spec);
    const CMatrix eta = build_parity(syn.dec);
    for (double t : {0.7, 3.0}) {
      const CMatrix u = propagator(syn.h, t);
      CHECK(testsupport::rel_distance(u.adjoint() * eta * u, eta) < 1e-8);
    }
  }
}

TEST_CASE("complex regime: eigenvalues of U(t) come in (lambda, 1/conj lambda) pairs") {
  const auto mp = mashhoon_papini({0.5, 1.0, -2.0});
  for (double t : {0.3, 1.0, 2.5}) {
    const CVector ev = eigenvalues(propagator(mp.h, t));
    CVector mirrored(2);
    for (std::size_t i = 0; i < 2; ++i) mirrored[i] = 1.0 / std::conj(ev[i]);
    CHECK(testsupport::multiset_distance(ev, mirrored) < 1e-10);
    CHECK(std::abs(std::abs(ev[0]) - 1.0) > 0.1);
  }
}

TEST_CASE("spin-flip probability") {
  const std::vector<double> times = time_grid(0.0, 20.0, 401);
  for (const auto& [r, s] : std::vector<std::pair<double, double>>{{0.5, 0.5}, {1.0, 1.0}, {2.0, 2.0}, {4.0, 0.25}, {0.5, 2.0}}) {
    const auto mp = mashhoon_papini({1.0, r, s});
    const CMatrix pplus = build_positive_metric(mp.dec);
    const auto req = request(mp.h, pplus, CVector{0.0, 1.0}, times);
    const auto flip = transition_probability(req, CVector{1.0, 0.0});
    const auto stay = transition_probability(req, CVector{0.0, 1.0});
    double worst = 0.0, sum_err = 0.0;
    for (std::size_t k = 0; k < times.size(); ++k) {
      const double expected = 0.5 * (1.0 - std::cos(2.0 * std::sqrt(r * s) * times[k]));
      worst = std::max(worst, std::abs(flip[k] - expected));
      sum_err = std::max(sum_err, std::abs(flip[k] + stay[k] - 1.0));
    }
    CAPTURE(r);
    CAPTURE(s);
    CHECK(worst <= 1e-10);
    CHECK(sum_err <= 1e-10);
  }
}

TEST_CASE("transition probabilities") {
  // stationary state
  const CMatrix h{{2.0, 1.0}, {1.0, -1.0}};
  const HermitianEigen eig = eig_hermitian(h);
  const CVector v = eig.vectors.col(0);
  const auto p = transition_probability(request(h, CMatrix::identity(2), v, time_grid(0.0, 5.0, 11)), v);
  for (double x : p) CHECK(x == doctest::Approx(1.0).epsilon(1e-12));

  const auto mp = mashhoon_papini({1.0, 1.0, 1.0});
  const auto req = request(mp.h, build_parity(mp.dec), CVector{0.0, 1.0}, {0.0, 1.0});
  CHECK(code_of([&] { transition_probability(req, CVector{1.0, 0.0}); }) == ErrorCode::IndefiniteMetric);
  CHECK(code_of([&] { transition_probability(request(mp.h, CMatrix::identity(2), CVector{0.0, 1.0}, {0.0}), CVector{1.0}); }) ==
        ErrorCode::DimensionMismatch);

  Gen g(9);
  for (int trial = 0; trial < 30; ++trial) {
    SynthesisSpec spec;
    const std::size_t n = static_cast<std::size_t>(g.integer(1, 5));
    for (std::size_t k = 0; k < n; ++k) spec.groups.push_back({static_cast<double>(k) - 1.5, {1}});
    spec.seed = static_cast<std::uint64_t>(trial);
    spec.condition = 20.0;
    const auto syn = synthesize(spec);
    const auto probs = transition_probability(
        request(syn.h, build_positive_metric(syn.dec), g.vector(n), time_grid(0.0, 4.0, 9)), g.vector(n));
    for (double x : probs) {
      CHECK(x >= -1e-12);
      CHECK(x <= 1.0 + 1e-10);
    }
  }
}

TEST_CASE("Krein norm conservation") {
  const auto times = time_grid(0.0, 10.0, 51);
  Gen g(11);

  const CMatrix herm = g.hermitian(3);
  const auto hn = krein_norm_series(request(herm, CMatrix::identity(3), g.vector(3), times));
  for (double x : hn) CHECK(x == doctest::Approx(hn[0]).epsilon(1e-10));

  const auto real = mashhoon_papini({1.0, 4.0, 0.5});
  const auto req = request(real.h, build_positive_metric(real.dec), CVector{cplx(0.3, 0.1), 1.0}, times);
  const auto krein = krein_norm_series(req);
  const auto eucl = euclidean_norm_series(req);
  double krein_dev = 0.0, eucl_dev = 0.0;
  for (std::size_t k = 0; k < times.size(); ++k) {
    krein_dev = std::max(krein_dev, std::abs(krein[k] - krein[0]));
    eucl_dev = std::max(eucl_dev, std::abs(eucl[k] - eucl[0]));
  }
  CHECK(krein_dev <= 1e-8 * std::abs(krein[0]));
  CHECK(eucl_dev > 0.1);

  const auto pair = mashhoon_papini({0.0, 1.0, -1.0});
  const auto kp = krein_norm_series(request(pair.h, build_parity(pair.dec), CVector{1.0, cplx(0.0, 2.0)}, time_grid(0.0, 3.0, 31)));
  for (double x : kp) CHECK(std::abs(x - kp[0]) <= 1e-8 * std::max(1.0, std::abs(kp[0])));

  // a growing state: ||psi(t)||^2 reaches e^20 while the Krein norm stays at 1
  const auto grow = mashhoon_papini({1.0, 1.0, -1.0});
  const auto kg = krein_norm_series(request(grow.h, build_parity(grow.dec), CVector{0.0, 1.0}, times));
  for (double x : kg) CHECK(std::abs(x - 1.0) <= 1e-10);
  CHECK(code_of([&] { krein_norm_series(request(grow.h, build_parity(grow.dec), CVector{0.0, 1.0}, {0.0, 1e6})); }) ==
        ErrorCode::Overflow);

  CHECK(code_of([&] { krein_norm_series(request(real.h, CMatrix::identity(2), CVector{1.0, 0.0}, times)); }) ==
        ErrorCode::NotPseudoHermitian);
  CHECK(code_of([&] { krein_norm_series(request(real.h, CMatrix::identity(2), CVector{0.0, 0.0}, times)); }) ==
        ErrorCode::InvalidArgument);
  CHECK(code_of([&] { krein_norm_series(request(real.h, CMatrix::identity(2), CVector{1.0, 0.0}, {1.0, 1.0})); }) ==
        ErrorCode::InvalidArgument);
}

TEST_CASE("time grid") {
  const auto t = time_grid(0.0, 1.0, 5);
  REQUIRE(t.size() == 5);
  CHECK(t[0] == 0.0);
  CHECK(t[2] == doctest::Approx(0.5));
  CHECK(t[4] == 1.0);
  CHECK(time_grid(2.0, 2.0, 1) == std::vector<double>{2.0});
  CHECK(code_of([] { time_grid(0.0, 1.0, 0); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { time_grid(1.0, 0.0, 3); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("two-level model regimes") {
  const auto a = mashhoon_papini({1.0, 0.5, 0.5});
  CHECK(a.regime == Regime::RealNondegenerate);
  CHECK(testsupport::multiset_distance(eigenvalues(a.h), CVector{0.5, 1.5}) < 1e-12);
  CHECK(testsupport::multiset_distance(CVector{a.dec.groups[0].spec.eigenvalue, a.dec.groups[1].spec.eigenvalue},
                                       CVector{0.5, 1.5}) < 1e-15);

  const auto b = mashhoon_papini({1.0, 1.0, -1.0});
  CHECK(b.regime == Regime::ComplexPair);
  CHECK(testsupport::multiset_distance(eigenvalues(b.h), CVector{cplx(1.0, 1.0), cplx(1.0, -1.0)}) < 1e-12);
  CHECK(b.dec.groups[0].kind == GroupKind::PlusMember);
  CHECK(b.dec.partner(0) == 1);

  const auto c = mashhoon_papini({1.0, 1.0, 0.0});
  CHECK(c.regime == Regime::JordanBlock);
  REQUIRE(c.dec.groups.size() == 1);
  CHECK(c.dec.groups[0].spec.block_dims == std::vector<std::size_t>{2});

  const auto d = mashhoon_papini({2.0, 0.0, 0.0});
  CHECK(d.regime == Regime::Scalar);
  CHECK(d.dec.groups[0].spec.block_dims == std::vector<std::size_t>{1, 1});
  CHECK(to_string(Regime::ComplexPair) == "ComplexPair");

  CHECK(code_of([] { mashhoon_papini({INFINITY, 1.0, 1.0}); }) == ErrorCode::InvalidArgument);

  // every hand-written basis is a biorthonormal Jordan basis of its H
  for (const auto& params : std::vector<MashhoonPapiniParams>{{1.0, 2.0, 0.5}, {0.0, -1.0, 3.0}, {1.0, 1.0, -4.0},
                                                              {1.0, -2.0, 0.5}, {0.5, 2.5, 0.0}, {0.5, 0.0, -1.5}, {3.0, 0.0, 0.0}}) {
    const auto mp = mashhoon_papini(params);
    const auto rep = check_biorthonormal(mp.dec);
    CHECK(rep.gram < 1e-14);
    CHECK(rep.completeness < 1e-14);
    CHECK(chain_residual(mp.dec, mp.h) < 1e-13);
  }
}

TEST_CASE("regime boundary: a closing gap is not silently merged") {
  // with the gap above the cluster scale the two eigenvalues stay separate
  CHECK(analyze(mashhoon_papini({1.0, 1.0, 1e-4}).h).groups.size() == 2);
  // a gap of 2e-6 is merged into one Jordan block and reported
  const auto near = analyze(mashhoon_papini({1.0, 1.0, 1e-12}).h);
  REQUIRE(near.groups.size() == 1);
  CHECK(near.groups[0].spec.block_dims == std::vector<std::size_t>{2});
  CHECK_FALSE(near.warnings.empty());
  // the model itself stays usable arbitrarily close to the boundary
  const auto tiny = mashhoon_papini({1.0, 1.0, 1e-20});
  CHECK(tiny.regime == Regime::RealNondegenerate);
  CHECK(check_biorthonormal(tiny.dec).gram < 1e-12);
}
