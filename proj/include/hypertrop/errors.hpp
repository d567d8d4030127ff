#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hypertrop {

// Base for errors caused by valid input that falls outside what the
// library can handle (CLI exit code 2).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " at position " + std::to_string(pos)), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

class NotASquareError : public DomainError {
 public:
  using DomainError::DomainError;
};

class UnsupportedStratumError : public DomainError {
 public:
  using DomainError::DomainError;
};

class UnsupportedSubstitutionError : public DomainError {
 public:
  using DomainError::DomainError;
};

class ConstructionError : public DomainError {
 public:
  using DomainError::DomainError;
};

class CombinationError : public DomainError {
 public:
  using DomainError::DomainError;
};

class InvalidPlaneError : public DomainError {
 public:
  using DomainError::DomainError;
};

class InfeasibleConeError : public DomainError {
 public:
  using DomainError::DomainError;
};

class ScalingRequiredError : public DomainError {
 public:
  using DomainError::DomainError;
};

}  // namespace hypertrop
