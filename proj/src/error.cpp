#include "multipole/error.hpp"

namespace multipole {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MixedParity: return "MixedParity";
    case ErrorKind::NotDivisible: return "NotDivisible";
    case ErrorKind::Degenerate: return "Degenerate";
    case ErrorKind::InsufficientQuadrature: return "InsufficientQuadrature";
    case ErrorKind::NotOnConic: return "NotOnConic";
    case ErrorKind::ZeroForm: return "ZeroForm";
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::SolveFailure: return "SolveFailure";
    case ErrorKind::OddTotal: return "OddTotal";
    case ErrorKind::DivisibleByQ: return "DivisibleByQ";
    case ErrorKind::NoEvaluationPoint: return "NoEvaluationPoint";
    case ErrorKind::NotReal: return "NotReal";
    case ErrorKind::NotDefinite: return "NotDefinite";
    case ErrorKind::ConjugationPairingFailure: return "ConjugationPairingFailure";
    case ErrorKind::NotHarmonic: return "NotHarmonic";
    case ErrorKind::DegenerateTangency: return "DegenerateTangency";
    case ErrorKind::StrategyMismatch: return "StrategyMismatch";
    case ErrorKind::InvalidPartition: return "InvalidPartition";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace multipole
