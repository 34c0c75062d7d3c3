#pragma once

#include <stdexcept>
#include <string>

namespace vanatta {

/// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A geometric design rule cannot be satisfied (spacing, pairing).
class ConstraintError : public Error {
 public:
  using Error::Error;
};

/// Inconsistent switch or radar configuration.
class ConfigurationError : public Error {
 public:
  using Error::Error;
};

class SchedulingError : public Error {
 public:
  using Error::Error;
};

/// Input violates an operation precondition (e.g. unvalidated layout).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Raised when the operating wavelength is too far from the design wavelength.
class DetunedError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class DecodingError : public Error {
 public:
  using Error::Error;
};

/// File access or parse failure.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace vanatta
