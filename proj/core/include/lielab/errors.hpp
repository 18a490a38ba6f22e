#pragma once

#include <stdexcept>
#include <string>

namespace lielab {

/// Input outside the mathematical domain of an operation (bad rank, p < 7, root not in the system, ...).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

class DivisionByZero : public DomainError {
 public:
  explicit DivisionByZero(const std::string& what) : DomainError(what) {}
};

/// Matrix or vector dimensions do not fit the operation.
class ShapeError : public std::invalid_argument {
 public:
  explicit ShapeError(const std::string& what) : std::invalid_argument(what) {}
};

/// A request exceeds the configured computational budget. Never answered partially.
class InfeasibleError : public std::runtime_error {
 public:
  explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

class ResolutionError : public std::runtime_error {
 public:
  explicit ResolutionError(const std::string& what) : std::runtime_error(what) {}
};

class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace lielab
