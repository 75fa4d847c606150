#pragma once

#include <stdexcept>
#include <string>

namespace affmb {

// User-facing failures: bad input, illegal moves, unsupported requests.
// The CLI maps these to exit code 2 and the HTTP layer to 4xx.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller broke an operation's precondition (size mismatch and the like).
class ContractViolation : public DomainError {
 public:
  using DomainError::DomainError;
};

class IllegalMove : public DomainError {
 public:
  using DomainError::DomainError;
};

// Operation attempted on a game in the wrong state (finished, wrong turn).
class StateError : public DomainError {
 public:
  using DomainError::DomainError;
};

class UnsupportedError : public DomainError {
 public:
  using DomainError::DomainError;
};

class ResourceError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Two labels of a parametric tree coincide.
class DegeneracyError : public DomainError {
 public:
  DegeneracyError(std::string first, std::string second, const std::string& what)
      : DomainError(what), first_(std::move(first)), second_(std::move(second)) {}

  const std::string& first() const noexcept { return first_; }
  const std::string& second() const noexcept { return second_; }

 private:
  std::string first_;
  std::string second_;
};

// Maker's tree agent found no clean child to move to.
class StrategyViolated : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The engine caught itself producing a wrong answer.
class InternalInconsistency : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace affmb
