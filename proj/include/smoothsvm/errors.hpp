#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace smoothsvm {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter violates a construction-time invariant (e.g. sigma <= 0).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class NonDifferentiable : public Error {
 public:
  using Error::Error;
};

class OutOfDomain : public Error {
 public:
  using Error::Error;
};

class Unsupported : public Error {
 public:
  using Error::Error;
};

class InvalidGenerator : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// Curvature along a CG direction was not positive.
class NumericalBreakdown : public Error {
 public:
  using Error::Error;
};

class WrongLoss : public Error {
 public:
  using Error::Error;
};

class TooFewInstances : public Error {
 public:
  using Error::Error;
};

/// Inconsistent run configuration (solver/loss pairing, bad flag values).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Malformed LIBSVM input. `line()` is 1-based; 0 refers to the whole input.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what);

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace smoothsvm
