#pragma once

#include <stdexcept>
#include <string>

namespace bsmimo {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Terminated network matrix is numerically singular (resonant/degenerate load choice).
class SingularNetwork : public Error {
 public:
  using Error::Error;
};

/// Two patterns do not share the same sphere grid.
class GridMismatch : public Error {
 public:
  using Error::Error;
};

/// A text input could not be parsed; carries the offending line number.
class ParseError : public Error {
 public:
  ParseError(const std::string& path, long line, const std::string& msg)
      : Error(path + ":" + std::to_string(line) + ": " + msg), line_(line) {}
  long line() const { return line_; }

 private:
  long line_;
};

/// Pattern grid is not a uniform full-sphere grid.
class NonUniformGrid : public Error {
 public:
  using Error::Error;
};

/// One basis pattern carries (almost) no power; the two states collapsed.
class DegenerateBasis : public Error {
 public:
  using Error::Error;
};

/// |sigma| >= 1 cannot define a proper transmit covariance.
class InvalidCorrelation : public Error {
 public:
  using Error::Error;
};

/// Requested value lies outside the sampled range of a curve.
class OutOfRange : public Error {
 public:
  using Error::Error;
};

/// Geometry violates the validity domain of the analytic radiator model.
class OutOfValidityDomain : public Error {
 public:
  using Error::Error;
};

/// Every cell of a load sweep failed; no argmax exists.
class AllCellsInvalid : public Error {
 public:
  using Error::Error;
};

/// Denominator curve is numerically zero at a requested point.
class DivisionUnderflow : public Error {
 public:
  using Error::Error;
};

/// Scenario configuration file is invalid; message names the field path.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace bsmimo
