#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pseudoherm {

enum class ErrorCode {
  InvalidArgument,
  DimensionMismatch,
  NonConvergence,
  Singular,
  Overflow,
  ClusterAmbiguity,
  NotPaired,
  SingularBasis,
  SingularMetric,
  NonHermitianMetric,
  NotDiagonalizableReal,
  UnpairedRealBlocks,
  NotInvolutory,
  NotAntiunitary,
  SingularOperator,
  ZeroLeadingCoefficient,
  IndefiniteMetric,
  NotPseudoHermitian,
  Parse,
};

std::string_view to_string(ErrorCode code);

// Every failure in the library is reported through this type; the code is
// what callers branch on, the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace pseudoherm
