#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "pseudoherm/kernels.hpp"
#include "test_support.hpp"

using namespace pseudoherm;
using testsupport::Gen;

namespace {

double max_diff(const CVector& a, const CVector& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

const kernels::KernelTable* vector_table() {
  return kernels::simd_supported() ? kernels::simd_table() : nullptr;
}

}  // namespace

TEST_CASE("active table is one of the known variants") {
  const auto& t = kernels::active();
  CHECK((t.name == "scalar" || t.name == "avx2" || t.name == "neon"));
}

TEST_CASE("scalar reference kernels on hand-checked values") {
  const auto& k = kernels::scalar_table();
  const CVector x{{1, 2}, {3, -1}};
  const CVector y{{0, 1}, {2, 2}};
  // conj(1+2i)(i) + conj(3-i)(2+2i) = (2+i) + (4+8i)
  CHECK(k.dotc(2, x.data(), y.data()) == cplx(6, 9));
  CHECK(k.norm2sq(2, x.data()) == doctest::Approx(15.0));

  CVector z = y;
  k.axpy(2, cplx(0, 1), x.data(), z.data());
  CHECK(z[0] == cplx(-2, 2));
  CHECK(z[1] == cplx(3, 5));

  const CMatrix a{{1, 2}, {3, 4}};
  const CMatrix b{{0, 1}, {1, 0}};
  CMatrix c(2);
  k.gemm(2, 2, 2, a.data(), b.data(), c.data());
  CHECK(c == CMatrix{{2, 1}, {4, 3}});
}

TEST_CASE("vector kernels match the scalar reference") {
  const auto* simd = vector_table();
  if (simd == nullptr) {
    MESSAGE("no vector kernels on this CPU; equivalence not exercised");
    return;
  }
  const auto& ref = kernels::scalar_table();
  Gen g(11);
  for (std::size_t len : {0u, 1u, 2u, 3u, 7u, 16u, 33u, 64u}) {
    CAPTURE(len);
    const CVector x = g.vector(len);
    const CVector y = g.vector(len);
    const cplx alpha = g.cnormal();

    CHECK(std::abs(ref.dotc(len, x.data(), y.data()) - simd->dotc(len, x.data(), y.data())) <= 1e-12 * (1.0 + len));
    CHECK(std::abs(ref.norm2sq(len, x.data()) - simd->norm2sq(len, x.data())) <= 1e-12 * (1.0 + len));

    CVector ya = y, yb = y;
    ref.axpy(len, alpha, x.data(), ya.data());
    simd->axpy(len, alpha, x.data(), yb.data());
    CHECK(max_diff(ya, yb) <= 1e-13);

    const cplx u[4] = {g.cnormal(), g.cnormal(), g.cnormal(), g.cnormal()};
    CVector xa = x, xb = x;
    ya = y;
    yb = y;
    ref.rot(len, u, xa.data(), ya.data());
    simd->rot(len, u, xb.data(), yb.data());
    CHECK(max_diff(xa, xb) <= 1e-13);
    CHECK(max_diff(ya, yb) <= 1e-13);
  }
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t m = g.integer(1, 9), n = g.integer(1, 9), kk = g.integer(1, 9);
    const CMatrix a = g.matrix(m, kk);
    const CMatrix b = g.matrix(kk, n);
    CMatrix ca(m, n), cb(m, n);
    ref.gemm(m, n, kk, a.data(), b.data(), ca.data());
    simd->gemm(m, n, kk, a.data(), b.data(), cb.data());
    CHECK((ca - cb).max_abs() <= 1e-12);
  }
}
