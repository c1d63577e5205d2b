#pragma once

#include <stdexcept>
#include <string>

namespace redcbc {

/// Invalid parameter values or malformed input.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& msg) : std::invalid_argument(msg) {}
};

/// Request exceeds the supported problem size (e.g. general-weight subset
/// enumeration beyond s = 20, or table sizes beyond the memory cap).
class CapacityError : public std::runtime_error {
 public:
  explicit CapacityError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& msg) : std::domain_error(msg) {}
};

/// Closed-form kernel requested for a smoothness it does not cover
/// (the Fourier kernel table needs a positive even integer exponent).
class UnsupportedSmoothnessError : public DomainError {
 public:
  explicit UnsupportedSmoothnessError(const std::string& msg) : DomainError(msg) {}
};

}  // namespace redcbc
