#pragma once

#include <stdexcept>
#include <string>

namespace vdf {

/// Violated precondition or postcondition of a library operation.
class ContractError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class RankMismatch : public ContractError {
 public:
  using ContractError::ContractError;
};

/// A series whose known support is empty but which carries a finite truncation:
/// it is zero only modulo that truncation, so it has no determinate valuation.
class IndeterminateValuation : public ContractError {
 public:
  using ContractError::ContractError;
};

/// The monomial needed by asymptotic integration is not present at the current depth.
class IntegrationGap : public ContractError {
 public:
  using ContractError::ContractError;
};

class NonDecreasingResidual : public ContractError {
 public:
  using ContractError::ContractError;
};

/// A sampling validator found a counterexample to a declared property.
class ValidationError : public ContractError {
 public:
  using ContractError::ContractError;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line, int column)
      : std::runtime_error(what + " at line " + std::to_string(line) + ", column " +
                           std::to_string(column)),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace vdf
