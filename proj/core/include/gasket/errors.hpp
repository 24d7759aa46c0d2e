#pragma once

#include <stdexcept>
#include <string>

namespace gasket {

/// Root of the library's exception hierarchy. Every error raised by the
/// library derives from this type; the CLI maps each subclass onto an exit
/// code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the documented domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A configured cap (block exponent, depth, length) would be exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// A comparison could not be certified at the available precision.
class PrecisionError : public Error {
 public:
  using Error::Error;
};

/// A base enclosure straddles a ladder point or the Komornik-Loreti
/// enclosure, so the regime cannot be certified.
class AmbiguousClassification : public PrecisionError {
 public:
  using PrecisionError::PrecisionError;
};

/// A bounded search (e.g. for a subshift level) found nothing.
class CapabilityError : public Error {
 public:
  using Error::Error;
};

/// Reading or writing a file failed.
class IoError : public Error {
 public:
  using Error::Error;
};

/// A self-consistency check inside the library failed.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace gasket
