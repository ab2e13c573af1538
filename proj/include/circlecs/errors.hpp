#pragma once

#include <stdexcept>
#include <string>

namespace circlecs {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A nome outside the open unit interval.
class NomeOutOfRange : public Error {
 public:
  using Error::Error;
};

/// A series whose truncation order would exceed the configured cap.
class NonConvergence : public Error {
 public:
  using Error::Error;
};

/// Period matrix without positive-definite imaginary part.
class PeriodNotConvergent : public Error {
 public:
  using Error::Error;
};

/// Zak sum that does not settle within the term cap.
class SlowDecay : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class SectorMismatch : public Error {
 public:
  using Error::Error;
};

/// Invalid physical or numerical parameters (geometry, quadrature, lattice).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace circlecs
