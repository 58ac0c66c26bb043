#pragma once

#include <stdexcept>
#include <string>

namespace binopt {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An algorithm or model parameter is outside its admissible range.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// An argument point lies outside the domain of the operation (e.g. not in the box).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The operation is not supported for the given input (too large, no bound declared, ...).
class CapabilityError : public Error {
 public:
  using Error::Error;
};

/// A quantity is mathematically undefined for the given input (e.g. zero reference value).
class UndefinedError : public Error {
 public:
  using Error::Error;
};

/// Instance data is missing, inconsistent, or cannot be generated.
class InstanceError : public Error {
 public:
  using Error::Error;
};

/// Malformed instance data. `line()` is 1-based, 0 when not tied to a line.
class ParseError : public InstanceError {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : InstanceError(line == 0 ? what : what + " (line " + std::to_string(line) + ")"), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A numerical self-consistency check failed; indicates a bug rather than bad input.
class InternalError : public Error {
 public:
  using Error::Error;
};

/// No backtracking exponent within the cap satisfied the sufficient-decrease test.
class LineSearchError : public Error {
 public:
  LineSearchError(const std::string& what, double last_tau, std::size_t iteration)
      : Error(what), last_tau_(last_tau), iteration_(iteration) {}
  double last_tau() const noexcept { return last_tau_; }
  std::size_t iteration() const noexcept { return iteration_; }

 private:
  double last_tau_;
  std::size_t iteration_;
};

}  // namespace binopt
