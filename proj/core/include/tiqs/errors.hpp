#pragma once

#include <stdexcept>
#include <string>

namespace tiqs {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SolverFailure : public Error {
 public:
  SolverFailure(const std::string& what, double residual, int iterations);
  double residual;
  int iterations;
};

class InstabilityError : public Error {
 public:
  InstabilityError(const std::string& what, double ratio);
  double ratio;
};

class ValidityError : public Error {
 public:
  using Error::Error;
};

class ResonanceError : public Error {
 public:
  ResonanceError(const std::string& what, int mode);
  int mode;
};

class ConvergenceFailure : public Error {
 public:
  ConvergenceFailure(const std::string& what, double last_error, double last_step);
  double last_error;
  double last_step;
};

class TruncationError : public Error {
 public:
  TruncationError(const std::string& what, int required_cutoff);
  int required_cutoff;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace tiqs
