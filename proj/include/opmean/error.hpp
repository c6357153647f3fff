#pragma once

#include <stdexcept>
#include <string>

namespace opmean {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A scalar function was evaluated outside its domain (e.g. an inverse power
/// of a non-positive eigenvalue).
class DomainError : public Error {
 public:
  using Error::Error;
};

class NotPositiveDefinite : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// Invalid parameters or configuration (bad band, unknown name, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Input matrices fall outside the declared spectral band.
class BandViolation : public Error {
 public:
  using Error::Error;
};

/// A statement was checked under a configuration that breaks its hypotheses.
class HypothesisError : public Error {
 public:
  using Error::Error;
};

}  // namespace opmean
