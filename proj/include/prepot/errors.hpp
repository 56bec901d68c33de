#pragma once

#include <stdexcept>
#include <string>

namespace prepot {

// Base for every error raised by the library. The CLI maps the two
// subclasses below to distinct exit codes.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Bad input: parameters, levels or grids outside what a model admits.
class InputError : public Error {
public:
  using Error::Error;
};

// A numerical procedure failed to produce an answer.
class NumericalError : public Error {
public:
  using Error::Error;
};

class UnviableCoordinate : public InputError {
public:
  using InputError::InputError;
};

class DomainViolation : public InputError {
public:
  using InputError::InputError;
};

class LevelOutOfRange : public InputError {
public:
  using InputError::InputError;
};

class ParameterWindowExceeded : public InputError {
public:
  using InputError::InputError;
};

class GridTooCoarse : public InputError {
public:
  using InputError::InputError;
};

class InvalidRoots : public InputError {
public:
  using InputError::InputError;
};

class CoincidentRoots : public NumericalError {
public:
  using NumericalError::NumericalError;
};

class NoConvergence : public NumericalError {
public:
  using NumericalError::NumericalError;
};

class IntegrationDiverged : public NumericalError {
public:
  using NumericalError::NumericalError;
};

class ConvergenceFailure : public NumericalError {
public:
  using NumericalError::NumericalError;
};

} // namespace prepot
