#include <cmath>

#include "pseudoherm/error.hpp"
#include "pseudoherm/linalg.hpp"

namespace pseudoherm {
namespace {

constexpr double kTheta13 = 5.371920351148152;
constexpr double kPade13[14] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
                                129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
                                1323241920.0,        40840800.0,          960960.0,           16380.0,
                                182.0,               1.0};

CMatrix combo(const CMatrix& a6, const CMatrix& a4, const CMatrix& a2, double c6, double c4, double c2) {
  return c6 * a6 + c4 * a4 + c2 * a2;
}

}  // namespace

CMatrix expm(const CMatrix& a, double max_norm) {
  if (!a.is_square()) fail(ErrorCode::DimensionMismatch, "expm: matrix must be square");
  if (!a.all_finite()) fail(ErrorCode::Overflow, "expm: matrix has non-finite entries");
  const std::size_t n = a.rows();
  const double norm = a.norm1();
  if (norm > max_norm) fail(ErrorCode::Overflow, "expm: 1-norm exceeds the configured bound");
  if (n == 0) return {};

  int squarings = 0;
  if (norm > kTheta13) squarings = static_cast<int>(std::ceil(std::log2(norm / kTheta13)));
  const CMatrix as = std::ldexp(1.0, -squarings) * a;
  const CMatrix id = CMatrix::identity(n);
  const CMatrix a2 = as * as;
  const CMatrix a4 = a2 * a2;
  const CMatrix a6 = a4 * a2;
  const double* b = kPade13;

  const CMatrix u_inner = a6 * combo(a6, a4, a2, b[13], b[11], b[9]) + combo(a6, a4, a2, b[7], b[5], b[3]) + b[1] * id;
  const CMatrix u = as * u_inner;
  const CMatrix v = a6 * combo(a6, a4, a2, b[12], b[10], b[8]) + combo(a6, a4, a2, b[6], b[4], b[2]) + b[0] * id;

  // v - u is a Pade denominator, well conditioned after scaling; solve with a tight pivot floor.
  CMatrix r = solve(v - u, v + u, Tolerance{1e-300, 0.0});
  for (int i = 0; i < squarings; ++i) r = r * r;
  if (!r.all_finite()) fail(ErrorCode::Overflow, "expm: result overflowed");
  return r;
}

}  // namespace pseudoherm
