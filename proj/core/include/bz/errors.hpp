#pragma once

#include <stdexcept>
#include <string>

namespace bz {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A density whose tail integral does not converge.
class IntegrabilityError : public Error {
 public:
  using Error::Error;
};

// Argument outside the domain of a function, or overflow of a scale function.
class DomainError : public Error {
 public:
  using Error::Error;
};

class QuadratureError : public Error {
 public:
  QuadratureError(const std::string& what, double previous, double current)
      : Error(what), previous_(previous), current_(current) {}
  explicit QuadratureError(const std::string& what)
      : QuadratureError(what, 0.0, 0.0) {}

  double previous_estimate() const noexcept { return previous_; }
  double current_estimate() const noexcept { return current_; }

 private:
  double previous_;
  double current_;
};

// Scale function outside class L (not essentially monotone, no envelope).
class NotInClassError : public Error {
 public:
  using Error::Error;
};

class ParameterError : public Error {
 public:
  using Error::Error;
};

class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

class TruncationError : public Error {
 public:
  TruncationError(const std::string& what, double tail_bound)
      : Error(what), tail_bound_(tail_bound) {}

  double tail_bound() const noexcept { return tail_bound_; }

 private:
  double tail_bound_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace bz
