#pragma once

#include <stdexcept>
#include <string>

namespace edsring {

// Base class for every error raised by the library. The CLI maps the
// subclasses onto its exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SingularCurve : public Error {
 public:
  using Error::Error;
};

class NotOnCurve : public Error {
 public:
  using Error::Error;
};

class InvalidConfig : public Error {
 public:
  using Error::Error;
};

// Reduction requested at a prime of s_bad.
class BadPrime : public Error {
 public:
  using Error::Error;
};

// A size cap or budget forbids an exact computation.
class ComputationInfeasible : public Error {
 public:
  using Error::Error;
};

// Something the mathematics guarantees did not hold: an implementation bug.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

// An operation was called outside its stated domain.
class PreconditionFailed : public Error {
 public:
  using Error::Error;
};

class EmptyPrimitiveSet : public Error {
 public:
  using Error::Error;
};

class WindowError : public Error {
 public:
  using Error::Error;
};

class PrecisionFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace edsring
