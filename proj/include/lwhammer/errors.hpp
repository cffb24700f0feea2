#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lwhammer {

// Invalid input or configuration. The CLI maps these to exit code 2.
class ValidationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class DomainError : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class ParameterError : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class SizeError : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class PhaseError : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class SupportError : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class AlignmentError : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class InsufficientDataError : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class OutputExistsError : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class ParseError : public ValidationError {
public:
  ParseError(std::string key, const std::string& what)
      : ValidationError("scenario key '" + key + "': " + what), key_(std::move(key)) {}

  const std::string& key() const noexcept { return key_; }

private:
  std::string key_;
};

// Numerical failure during time marching. The CLI maps these to exit code 3.
class NumericalAbort : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class CflError : public NumericalAbort {
public:
  CflError(double courant, const std::string& what)
      : NumericalAbort(what), courant_(courant) {}

  double courant() const noexcept { return courant_; }

private:
  double courant_;
};

class BoundaryDegeneracyError : public NumericalAbort {
public:
  using NumericalAbort::NumericalAbort;
};

// Density hit zero, velocity went sonic, or a value stopped being finite.
class MonitorAbort : public NumericalAbort {
public:
  MonitorAbort(std::size_t step, std::size_t node, double t, const std::string& what)
      : NumericalAbort(what), step_(step), node_(node), t_(t) {}

  std::size_t step() const noexcept { return step_; }
  std::size_t node() const noexcept { return node_; }
  double time() const noexcept { return t_; }

private:
  std::size_t step_;
  std::size_t node_;
  double t_;
};

}  // namespace lwhammer
