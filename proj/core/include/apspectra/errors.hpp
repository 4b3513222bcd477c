#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace apspectra {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on a numeric parameter was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Integration was requested for a polynomial carrying a zero-frequency term.
class ZeroFrequencyTerm : public Error {
 public:
  using Error::Error;
};

class InvalidRange : public Error {
 public:
  using Error::Error;
};

/// The probe grid is too coarse for the fastest oscillation in the signal.
class StepTooCoarse : public Error {
 public:
  using Error::Error;
};

class EmptyList : public Error {
 public:
  using Error::Error;
};

/// A decay bound was requested at exponent zero, where it is undefined.
class ZeroExponent : public Error {
 public:
  using Error::Error;
};

class NotPeriodic : public Error {
 public:
  using Error::Error;
};

/// Type-erased base so callers can catch any non-convergence uniformly.
class NotConvergedError : public Error {
 public:
  using Error::Error;
};

/// Raised when an iterative estimate exhausts its budget. The partial
/// estimate (with its full trace) travels with the exception.
template <class Partial>
class NotConverged : public NotConvergedError {
 public:
  NotConverged(const std::string& what, Partial partial)
      : NotConvergedError(what), partial_(std::move(partial)) {}

  const Partial& partial() const noexcept { return partial_; }

 private:
  Partial partial_;
};

}  // namespace apspectra
