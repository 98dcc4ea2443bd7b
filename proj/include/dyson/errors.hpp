#ifndef DYSON_ERRORS_HPP
#define DYSON_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dyson {

// Caller passed something malformed: wrong lengths, negative exponents where
// nonnegative ones are required, mismatched variable counts.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A mathematical operation is undefined (division by the zero rational
// function, a substitution that annihilates a denominator, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// The pipeline ran correctly but could not produce a result: the fit gave up
// or a proof check failed.
class MathFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A boundary check needs lower-level closed forms that are not available.
class UnresolvedDependency : public MathFailure {
 public:
  using MathFailure::MathFailure;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dyson

#endif  // DYSON_ERRORS_HPP
