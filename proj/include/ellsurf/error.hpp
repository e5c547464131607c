#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ellsurf {

/// Failure categories. Everything except MalformedInput is a mathematical
/// failure (CLI exit code 1); MalformedInput maps to exit code 2.
enum class ErrorKind {
  DivisionByZero,
  UnknownName,
  BothZero,
  ZeroInput,
  ConstantInput,
  ClusterSplits,
  SingularModel,
  NotMinimal,
  NonPolynomial,
  DegreeOverflow,
  Unclassifiable,
  OffCurve,
  InfinityInput,
  AmbiguousComponent,
  AdditiveFiber,
  NotTwoTorsion,
  OutOfFamily,
  UnsupportedOrder,
  NotCoprime,
  Unrepresentable,
  PointNotOnQuadric,
  DegenerateConic,
  SingularSpecialization,
  ParametrizationPole,
  DegenerateMember,
  NonRationalCoefficients,
  CertificateFailed,
  UnsupportedInput,
  MalformedInput,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  bool is_input_error() const noexcept { return kind_ == ErrorKind::MalformedInput; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace ellsurf
