#pragma once

#include <stdexcept>
#include <string>

namespace adelic {

enum class ErrorKind {
  Parse,
  InvalidPrime,
  InvalidExpr,
  UnsupportedExpression,
  UnsupportedRing,
  CompositionNonzero,
  DegreeBoundExceeded,
  CarrierMismatch,
  FamilyProductRemains,
  NotRepresentable,
  NonCommuting,
  UnknownPrime,
  MissingGenerators,
  LawViolation,
  NotCocartesian,
  InvalidComplex,
  InvalidScenario,
};

const char* error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace adelic
