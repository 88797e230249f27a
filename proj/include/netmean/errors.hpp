#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace netmean {

// Base of every error raised by the library. Validation errors map to CLI
// exit code 2, complexity guards to exit code 3.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class InvalidDimension : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class FormatError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class DimensionMismatch : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Zero vector passed where a direction is required.
class DomainError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Axis with a nontrivial stabilizer (cone angle / fundamental domain undefined).
class DegenerateAxis : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class CertificateViolation : public ValidationError {
 public:
  CertificateViolation(const std::string& what, std::vector<std::size_t> offenders)
      : ValidationError(what), offenders_(std::move(offenders)) {}
  const std::vector<std::size_t>& offenders() const noexcept { return offenders_; }

 private:
  std::vector<std::size_t> offenders_;
};

class InfeasibleSpec : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Rejection sampler acceptance rate fell below the guard.
class SamplingError : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

// Work that would be exponential beyond the configured guard.
class ComplexityError : public Error {
 public:
  using Error::Error;
};

}  // namespace netmean
