#pragma once

#include <stdexcept>
#include <string>

namespace pisier_lab {

/// A precondition on an argument was violated (bad length, wrong parity, out of range).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Evaluation requested at a point outside the function's domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The request exceeds the desk-scale table caps.
class ResourceError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Two independent computations disagree where they must agree.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace pisier_lab
