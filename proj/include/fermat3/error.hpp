#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fermat3 {

enum class ErrorKind {
  InvalidArgument,
  NotPrime,
  NotSquareFree,
  ZeroPolynomial,
  DivisionByZero,
  LimitExceeded,
  RelationViolated,
  SingularModel,
  PreconditionViolated,
  HypothesisViolated,
  NotASolution,
  ReduciblePolynomial,
  EvenDegree,
  InternalInconsistency,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::NotSquareFree: return "NotSquareFree";
    case ErrorKind::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::LimitExceeded: return "LimitExceeded";
    case ErrorKind::RelationViolated: return "RelationViolated";
    case ErrorKind::SingularModel: return "SingularModel";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::HypothesisViolated: return "HypothesisViolated";
    case ErrorKind::NotASolution: return "NotASolution";
    case ErrorKind::ReduciblePolynomial: return "ReduciblePolynomial";
    case ErrorKind::EvenDegree: return "EvenDegree";
    case ErrorKind::InternalInconsistency: return "InternalInconsistency";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace fermat3
