#pragma once

#include <stdexcept>
#include <string>

namespace mcs {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Mixing geographic and planar coordinates in one computation.
class ModeMismatchError : public Error {
 public:
  using Error::Error;
};

// Invalid parameter value (k out of range, bad weights, malformed config).
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Input exceeds a hard admission limit of an exact method.
class SizeLimitError : public Error {
 public:
  using Error::Error;
};

// Candidate enumeration would exceed the configured route budget.
class EnumerationBudgetError : public SizeLimitError {
 public:
  using SizeLimitError::SizeLimitError;
};

// The requested solve has no feasible solution.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

// Budget below the minimum attainable incentive; carries that minimum.
class InfeasibleBudgetError : public InfeasibleError {
 public:
  InfeasibleBudgetError(const std::string& msg, double min_incentive)
      : InfeasibleError(msg), min_incentive_(min_incentive) {}
  double min_incentive() const { return min_incentive_; }

 private:
  double min_incentive_;
};

// Malformed instance file or CSV.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace mcs
