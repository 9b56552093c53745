#pragma once

#include <stdexcept>
#include <string>

namespace jacobi {

// Every library failure derives from Error so callers can catch one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A Gamma/digamma argument hit a non-positive integer.
class PoleError : public Error {
 public:
  using Error::Error;
};

// z coincides with an eigenvalue, so an m-function has a pole there.
class SpectrumPole : public PoleError {
 public:
  using PoleError::PoleError;
};

class ParamError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class NonConvergence : public Error {
 public:
  using Error::Error;
};

class DegenerateCase : public Error {
 public:
  using Error::Error;
};

class KMatrixSingular : public Error {
 public:
  using Error::Error;
};

class NotStrictlyPositive : public Error {
 public:
  using Error::Error;
};

class CountMismatch : public Error {
 public:
  using Error::Error;
};

class StepFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace jacobi
