#pragma once

#include <stdexcept>
#include <string>

namespace intwine {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A bilinear operation received a field with content beyond the dealias radius.
class AliasingViolation : public Error {
 public:
  using Error::Error;
};

/// An operation that only makes sense for one family of coupling matrices got another.
class WrongMatrixClass : public Error {
 public:
  using Error::Error;
};

/// Trajectory left the finite range (non-finite value or a norm above the guard).
class BlowupDetected : public Error {
 public:
  explicit BlowupDetected(const std::string& what, double t = 0.0)
      : Error(what), time_(t) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

/// Invalid argument that violates an operation precondition (dt <= 0, CFL, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class EmptySeries : public Error {
 public:
  using Error::Error;
};

class InsufficientData : public Error {
 public:
  using Error::Error;
};

class RadiusTooLarge : public Error {
 public:
  using Error::Error;
};

/// Malformed config/checkpoint text or a violated parameter constraint.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class ConfigInvalid : public Error {
 public:
  using Error::Error;
};

}  // namespace intwine
