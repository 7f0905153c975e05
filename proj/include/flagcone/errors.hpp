#pragma once

#include <stdexcept>
#include <string>

namespace flagcone {

/// Unsupported or inconsistent input (bad series, rank, index, catalog id).
class ConfigurationError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Input outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Evaluation point too close to the zero section w = 0.
class ChartDegeneracyError : public DomainError {
public:
  using DomainError::DomainError;
};

/// Violated internal invariant; indicates a bug rather than bad input.
class InternalError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

}  // namespace flagcone
