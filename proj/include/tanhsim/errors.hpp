#pragma once

#include <stdexcept>
#include <string>

namespace tanhsim {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A special function was evaluated at a pole of its parameters or argument.
class PoleError : public Error {
 public:
  using Error::Error;
};

/// A series or transformation could not reach the requested accuracy.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Hypergeometric exponents fall on a degenerate (logarithmic) case.
class DegenerateParameters : public Error {
 public:
  using Error::Error;
};

class StepLimitExceeded : public Error {
 public:
  using Error::Error;
};

/// The adaptive step size collapsed below the floating-point resolution of t.
class StepUnderflow : public Error {
 public:
  using Error::Error;
};

class IllConditioned : public Error {
 public:
  using Error::Error;
};

/// Invalid user configuration (CLI exit code 2).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A scan or solver produced unusable numbers (CLI exit code 1).
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace tanhsim
