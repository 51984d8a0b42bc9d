#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mdlsum {

// Malformed input text. Line numbers are 1-based; 0 means "not line oriented".
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Argument outside the operation's domain (bad node id, k > n, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Structurally valid text that does not match the expected shape.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Internal invariant broken by a caller-supplied object.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : std::runtime_error(what + " (residual " + std::to_string(residual) + ")"), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

}  // namespace mdlsum
