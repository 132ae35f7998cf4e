#pragma once

#include <stdexcept>
#include <string>

namespace gevreyflow {

/// Base class of every error raised by the library. Callers that only need
/// a message can catch this; the CLI maps it to exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid grid, evolution, damping or scenario parameters.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Spectrum handed to synthesis is not Hermitian-symmetric.
class SymmetryError : public Error {
 public:
  using Error::Error;
};

/// A cosh weight or weighted norm left double range.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// NaN/Inf in a state, blow-up during integration, or a divergent series.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

/// Scalar argument outside the domain of an inequality or index formula.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Spectrum has too few modes above the noise floor for a radius fit.
class UnderresolvedError : public Error {
 public:
  using Error::Error;
};

/// Config file syntax error; carries the 1-based position.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error(what + " (line " + std::to_string(line) + ", column " +
              std::to_string(column) + ")"),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace gevreyflow
