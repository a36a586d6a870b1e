#pragma once

#include <stdexcept>
#include <string>

namespace hyperpascal {

/// Argument outside the domain of an operation (pole of log-gamma, 0 raised
/// to a non-positive power, coordinates that need regularization, ...).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// A regularized coefficient has a pole that no other factor cancels.
class DivergentCoefficientError : public std::domain_error {
 public:
  explicit DivergentCoefficientError(const std::string& what)
      : std::domain_error(what) {}
};

/// Requested table or summation window exceeds its configured cap.
class ResourceError : public std::length_error {
 public:
  explicit ResourceError(const std::string& what) : std::length_error(what) {}
};

}  // namespace hyperpascal
