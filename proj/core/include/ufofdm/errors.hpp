#pragma once

#include <stdexcept>
#include <string>

namespace ufofdm {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside an operation's documented domain.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Individually valid settings that contradict each other.
class ConfigurationError : public Error {
 public:
  using Error::Error;
};

class FactorizationError : public Error {
 public:
  using Error::Error;
};

/// Zero-forcing is undefined because F(w)H(w) vanishes at a used bin.
class SpectralNullError : public Error {
 public:
  using Error::Error;
};

class ExperimentError : public Error {
 public:
  using Error::Error;
};

}  // namespace ufofdm

namespace ufofdm {

/// The design LP did not reach an optimal point.
class SolverError : public Error {
 public:
  using Error::Error;
};

}  // namespace ufofdm
