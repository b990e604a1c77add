#pragma once

#include <stdexcept>
#include <string>

namespace mqed {

/// Base of every error raised by the library. Callers that only need to
/// distinguish "bad input" from "numerics failed" can catch the two
/// intermediate classes below.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid arguments: out-of-domain frequencies, broken model invariants.
class InputError : public Error {
 public:
  using Error::Error;
};

/// The computation was well posed but could not be carried out to the
/// requested accuracy.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class DomainError : public InputError {
 public:
  using InputError::InputError;
};

/// Evaluation exactly at a pole of the model (e.g. conductivity at omega = 0).
class PoleError : public InputError {
 public:
  using InputError::InputError;
};

class UnsupportedModel : public InputError {
 public:
  using InputError::InputError;
};

class ConfigError : public InputError {
 public:
  using InputError::InputError;
};

/// Kramers-Kronig input whose high-frequency tail carries too much weight.
class TailDominated : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Argument-principle contour could not be refined below the phase-step limit.
class RefinementFailure : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class QuadratureError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class DivergenceSuspected : public QuadratureError {
 public:
  using QuadratureError::QuadratureError;
};

/// Output could not be written.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace mqed
