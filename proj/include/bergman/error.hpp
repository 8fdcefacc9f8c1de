#pragma once

#include <stdexcept>
#include <string>

namespace bergman {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A point lies on or outside the boundary guard of the domain, or an
/// index/order argument is out of its admissible range.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A computation produced a non-finite value (kernel overflow near the
/// boundary, divergent norm sums, ...).
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// The kernel appended to a BRO system is numerically inside the span of
/// the kernels already present.
class DegenerateExtension : public Error {
 public:
  using Error::Error;
};

/// The maximal selection cannot produce a new parameter: the target is
/// numerically inside the current span, or the multiplicity cap was hit.
class SelectionExhausted : public Error {
 public:
  using Error::Error;
};

/// Malformed experiment or object description.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace bergman
