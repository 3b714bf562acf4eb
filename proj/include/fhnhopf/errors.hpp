#pragma once

#include <stdexcept>
#include <string>

namespace fhn {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid configuration or parameters (CLI exit code 1).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Coordinate outside [-a, a].
class DomainError : public Error {
 public:
  using Error::Error;
};

// Numerical failures (CLI exit code 2).
class NumericalError : public Error {
 public:
  using Error::Error;
};

class BracketNotFound : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NoSignChange : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class SingularSystem : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class DivergenceError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace fhn
