#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace pact {

enum class ErrorCode {
  // groups
  NonAssociative,
  NoIdentity,
  NoInverse,
  ElementOutOfRange,
  NotASubgroup,
  OrderTooLarge,
  UnknownFamily,
  // pactions
  IdentityDomainNotFull,
  IdentityMapNotIdentity,
  NotBijective,
  InverseMismatch,
  CompositionViolation,
  NotInvariant,
  PointOutOfRange,
  // tuples / decomp
  NOutOfRange,
  TupleNotInSpace,
  NotDecomposable,
  EmptyStratum,
  // fdcstar
  NotSemisimpleOrDegenerate,
  IntegralityFailure,
  // rokhlin
  SearchBudgetExceeded,
  PreconditionViolated,
  // gridtowers
  ShapeMismatch,
  BadDelta,
  OddGrid,
  GridTooCoarse,
  // cli
  ParseError,
  ValidationError,
};

const char* to_string(ErrorCode code);

/// Domain error carrying a machine-readable code and the offending indices
/// (triple, element, point, ... depending on the code).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::vector<int> witness = {})
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code),
        witness_(std::move(witness)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::vector<int>& witness() const noexcept { return witness_; }

 private:
  ErrorCode code_;
  std::vector<int> witness_;
};

}  // namespace pact
