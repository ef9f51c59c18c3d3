#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace multipole {

enum class ErrorKind {
  MixedParity,
  NotDivisible,
  Degenerate,
  InsufficientQuadrature,
  NotOnConic,
  ZeroForm,
  ZeroVector,
  SolveFailure,
  OddTotal,
  DivisibleByQ,
  NoEvaluationPoint,
  NotReal,
  NotDefinite,
  ConjugationPairingFailure,
  NotHarmonic,
  DegenerateTangency,
  StrategyMismatch,
  InvalidPartition,
  Overflow,
  InvalidArgument,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace multipole
