#pragma once

#include <stdexcept>
#include <string>

namespace dkplab {

enum class ErrorKind {
  kDependentColumns,
  kDimensionCap,
  kRankDeficient,
  kShapeMismatch,
  kUnboundedWidth,
  kUnboundedDirection,
  kAssumptionViolated,
  kEmptyInterval,
  kInvalidK,
  kBadDimension,
  kParallelVectors,
  kDivisionByZero,
  kGcdNotOne,
  kTooLarge,
  kNotCertified,
  kBadRho,
  kUnsupported,
  kParse,
  kGeneratorViolation,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace dkplab
