#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bstkit {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// A documented precondition of an operation was not met by its arguments.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// An exhaustive search would exceed its enumeration budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// A variable required for evaluation is missing from a set assignment.
class MissingVariable : public Error {
 public:
  explicit MissingVariable(const std::string& name)
      : Error("variable '" + name + "' is not assigned"), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

}  // namespace bstkit
