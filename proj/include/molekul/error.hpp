#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace molekul {

enum class ErrorKind {
  ZeroDenominator,
  NegativeInput,
  NotPrime,
  OutOfRange,
  ParseError,
  NonCoprimeGenerators,
  ModulusNotInSemigroup,
  ArityMismatch,
  InfiniteResult,
  InvalidPair,
  EmptyInput,
  PrimesExhausted,
  NotAnAtom,
  NotInMonoid,
  InvalidSpec,
  NotInUnstablePart,
  NotStableMonoid,
  TruncationInsufficient,
  LimitExceeded,
  UnknownSuite,
  IoError,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ZeroDenominator: return "ZeroDenominator";
    case ErrorKind::NegativeInput: return "NegativeInput";
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::NonCoprimeGenerators: return "NonCoprimeGenerators";
    case ErrorKind::ModulusNotInSemigroup: return "ModulusNotInSemigroup";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::InfiniteResult: return "InfiniteResult";
    case ErrorKind::InvalidPair: return "InvalidPair";
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::PrimesExhausted: return "PrimesExhausted";
    case ErrorKind::NotAnAtom: return "NotAnAtom";
    case ErrorKind::NotInMonoid: return "NotInMonoid";
    case ErrorKind::InvalidSpec: return "InvalidSpec";
    case ErrorKind::NotInUnstablePart: return "NotInUnstablePart";
    case ErrorKind::NotStableMonoid: return "NotStableMonoid";
    case ErrorKind::TruncationInsufficient: return "TruncationInsufficient";
    case ErrorKind::LimitExceeded: return "LimitExceeded";
    case ErrorKind::UnknownSuite: return "UnknownSuite";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind),
        detail_(message) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

// Caps the number of factorizations (or candidate vectors) a single query may
// visit. Exceeding the cap raises LimitExceeded instead of truncating.
struct Limits {
  std::size_t max_factorizations = 1'000'000;
};

}  // namespace molekul
