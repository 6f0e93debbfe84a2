#pragma once

#include <stdexcept>
#include <string>

namespace reglab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Evaluation point outside the field's domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Requested derivative order is not available.
class OrderError : public Error {
 public:
  using Error::Error;
};

class UnsupportedDimension : public Error {
 public:
  using Error::Error;
};

class EmptyInput : public Error {
 public:
  using Error::Error;
};

/// Lorentz/Lebesgue index outside its admissible range.
class IndexError : public Error {
 public:
  using Error::Error;
};

class FamilyMismatch : public Error {
 public:
  using Error::Error;
};

/// Test-function support leaves the field's domain.
class SupportError : public Error {
 public:
  using Error::Error;
};

class NonIntegrableSource : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature ran out of panels before reaching a verdict.
class ToleranceNotMet : public Error {
 public:
  using Error::Error;
};

/// Malformed configuration, JSON, or command-line input.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace reglab
