#pragma once

#include <stdexcept>
#include <string>

namespace mfbath {

// Base for every error raised by the library. Callers that only need to
// report a failure can catch this; the CLI maps subclasses to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parameters outside the physical domain (negative couplings, T <= 0, ...).
class InvalidParams : public Error {
 public:
  using Error::Error;
};

// Iteration cap reached before the requested tolerance.
class NoConvergence : public Error {
 public:
  using Error::Error;
};

// A closed form would overflow double precision.
class RangeError : public Error {
 public:
  using Error::Error;
};

// Two-qubit pure state is not normalized.
class InvalidState : public Error {
 public:
  using Error::Error;
};

// Hermiticity, unit trace or positivity violated beyond tolerance.
class NotADensityMatrix : public Error {
 public:
  using Error::Error;
};

// Dense oracle requested for a bath too large to hold in memory.
class ConfigTooLarge : public Error {
 public:
  using Error::Error;
};

}  // namespace mfbath
