#pragma once

#include <stdexcept>
#include <string>

namespace certirelu {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidDimension : public Error {
 public:
  using Error::Error;
};

class EmptyRequest : public Error {
 public:
  using Error::Error;
};

class InvalidDensity : public Error {
 public:
  using Error::Error;
};

class InvalidCertificate : public Error {
 public:
  using Error::Error;
};

/// A numeric argument is outside the domain on which the operation is defined.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Quadrature step too coarse for the requested frequencies.
class ResolutionError : public Error {
 public:
  using Error::Error;
};

/// Frequency grid ends before the weighted spectrum has decayed.
class GridTooNarrow : public Error {
 public:
  using Error::Error;
};

/// Closed-loop trajectory left the finite range.
class InstabilityError : public Error {
 public:
  using Error::Error;
};

class FitError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace certirelu
