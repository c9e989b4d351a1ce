#pragma once

#include <stdexcept>
#include <string>

namespace samo {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Vector lengths or matrix shapes disagree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

class EmptyInputError : public Error {
 public:
  using Error::Error;
};

/// Invalid user-facing configuration (bad option values, unknown names).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A value lies outside the domain an operation accepts.
class DomainError : public Error {
 public:
  using Error::Error;
};

class DuplicateSampleError : public Error {
 public:
  using Error::Error;
};

/// Numerical integration produced a non-finite state.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

/// A linear or quadratic subproblem could not be solved.
class SolverError : public Error {
 public:
  using Error::Error;
};

class TrainingError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace samo
