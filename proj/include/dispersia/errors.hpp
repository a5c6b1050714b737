#pragma once

#include <stdexcept>
#include <string>

namespace dispersia {

/// Precondition violated by a caller-supplied argument.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A parameter lies outside the range where the well-posedness theory applies.
class HypothesisViolation : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class InsufficientSamples : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonpositiveValue : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dispersia
