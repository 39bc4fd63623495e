#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace windfarm {

/// Base for every error the library raises on bad input or infeasible requests.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed observation file or config document.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class EmptyDatasetError : public Error {
 public:
  EmptyDatasetError() : Error("empty dataset") {}
  explicit EmptyDatasetError(const std::string& detail) : Error("empty dataset: " + detail) {}
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of a formula.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A layout constraint cannot be satisfied (names the binding constraint).
class InfeasibleError : public Error {
 public:
  InfeasibleError(std::string constraint, const std::string& detail)
      : Error("infeasible (" + constraint + "): " + detail), constraint_(std::move(constraint)) {}

  const std::string& constraint() const noexcept { return constraint_; }

 private:
  std::string constraint_;
};

/// A computed result broke one of its own invariants. Always a bug.
class InvariantError : public Error {
 public:
  using Error::Error;
};

}  // namespace windfarm
