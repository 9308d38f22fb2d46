#pragma once

#include <stdexcept>
#include <string>

namespace cartdec {

// Every failed precondition or exceeded cap surfaces as one of these kinds,
// so callers (and the CLI) can report a stable identifier.
enum class ErrorKind {
  InvalidPermutation,
  CapExceeded,
  NotSubgroup,
  EmptyIndexSet,
  DuplicateMember,
  InvalidSystem,
  InvalidDecomposition,
  NotNormalized,
  NotBetween,
  NotInvariant,
  NotTransitive,
  WrongClass,
  InvariantViolation,
  UnsupportedRow,
  HypothesisViolation,
  WellDefinednessFailure,
  HypothesisNotMet,
  NoCleanDecomposition,
  ParseError,
  InvalidInstance,
};

inline const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidPermutation: return "InvalidPermutation";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::NotSubgroup: return "NotSubgroup";
    case ErrorKind::EmptyIndexSet: return "EmptyIndexSet";
    case ErrorKind::DuplicateMember: return "DuplicateMember";
    case ErrorKind::InvalidSystem: return "InvalidSystem";
    case ErrorKind::InvalidDecomposition: return "InvalidDecomposition";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::NotBetween: return "NotBetween";
    case ErrorKind::NotInvariant: return "NotInvariant";
    case ErrorKind::NotTransitive: return "NotTransitive";
    case ErrorKind::WrongClass: return "WrongClass";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
    case ErrorKind::UnsupportedRow: return "UnsupportedRow";
    case ErrorKind::HypothesisViolation: return "HypothesisViolation";
    case ErrorKind::WellDefinednessFailure: return "WellDefinednessFailure";
    case ErrorKind::HypothesisNotMet: return "HypothesisNotMet";
    case ErrorKind::NoCleanDecomposition: return "NoCleanDecomposition";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvalidInstance: return "InvalidInstance";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace cartdec
