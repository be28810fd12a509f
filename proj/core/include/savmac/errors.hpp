#pragma once

#include <stdexcept>
#include <string>

namespace savmac {

/// Base class for everything this library throws.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Field dimensions do not match the grid location they claim to live on.
class ShapeError : public Error {
 public:
  using Error::Error;
};

class SolverError : public Error {
 public:
  using Error::Error;
};

/// Krylov iteration hit maxit before reaching the requested tolerance.
class NoConvergence : public SolverError {
 public:
  NoConvergence(const std::string& what, int iterations, double residual)
      : SolverError(what), iterations(iterations), residual(residual) {}
  int iterations;
  double residual;
};

/// E1h + delta dropped to (or below) the machine guard; with delta = 0 this
/// signals a degenerate phase state.
class NonpositiveSavDenominator : public SolverError {
 public:
  using SolverError::SolverError;
};

/// The rank-one correction denominator vanished.  With the scheme's signs it
/// is provably >= 1, so hitting this indicates a bug upstream.
class SingularRankOneDenominator : public SolverError {
 public:
  using SolverError::SolverError;
};

/// divergence data handed to the saddle solver has nonzero mean.
class IncompatibleDivergenceData : public SolverError {
 public:
  using SolverError::SolverError;
};

class PicardNoConvergence : public SolverError {
 public:
  PicardNoConvergence(const std::string& what, int iterations)
      : SolverError(what), iterations(iterations) {}
  int iterations;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line) : Error(what), line(line) {}
  int line;
};

class ValidationError : public Error {
 public:
  ValidationError(const std::string& key, const std::string& reason)
      : Error("config key '" + key + "': " + reason), key(key) {}
  std::string key;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace savmac
