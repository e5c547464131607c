#include "ellsurf/error.hpp"

namespace ellsurf {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DivisionByZero: return "division-by-zero";
    case ErrorKind::UnknownName: return "unknown-name";
    case ErrorKind::BothZero: return "both-zero";
    case ErrorKind::ZeroInput: return "zero-input";
    case ErrorKind::ConstantInput: return "constant-input";
    case ErrorKind::ClusterSplits: return "cluster-splits";
    case ErrorKind::SingularModel: return "singular-model";
    case ErrorKind::NotMinimal: return "not-minimal";
    case ErrorKind::NonPolynomial: return "non-polynomial-coefficient";
    case ErrorKind::DegreeOverflow: return "degree-overflow";
    case ErrorKind::Unclassifiable: return "unclassifiable-valuation-pattern";
    case ErrorKind::OffCurve: return "off-curve";
    case ErrorKind::InfinityInput: return "point-at-infinity-input";
    case ErrorKind::AmbiguousComponent: return "odd-N-ambiguous-component";
    case ErrorKind::AdditiveFiber: return "additive-fiber";
    case ErrorKind::NotTwoTorsion: return "not-two-torsion";
    case ErrorKind::OutOfFamily: return "out-of-family";
    case ErrorKind::UnsupportedOrder: return "unsupported-order";
    case ErrorKind::NotCoprime: return "not-coprime";
    case ErrorKind::Unrepresentable: return "unrepresentable";
    case ErrorKind::PointNotOnQuadric: return "point-not-on-quadric";
    case ErrorKind::DegenerateConic: return "degenerate-conic";
    case ErrorKind::SingularSpecialization: return "singular-specialization";
    case ErrorKind::ParametrizationPole: return "parametrization-pole";
    case ErrorKind::DegenerateMember: return "degenerate-member";
    case ErrorKind::NonRationalCoefficients: return "non-rational-coefficients";
    case ErrorKind::CertificateFailed: return "certificate-failed";
    case ErrorKind::UnsupportedInput: return "unsupported-input";
    case ErrorKind::MalformedInput: return "malformed-input";
  }
  return "unknown";
}

}  // namespace ellsurf
