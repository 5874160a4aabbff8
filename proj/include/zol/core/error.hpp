#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace zol {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EmptyUniverse : public Error {
 public:
  EmptyUniverse() : Error("empty universe: some kind has positive arity") {}
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class ParameterRejected : public Error {
 public:
  using Error::Error;
};

class ArityMismatch : public Error {
 public:
  using Error::Error;
};

/// Raised by searches that ran out of their node-expansion budget
/// without reaching an exact answer.
class BudgetExhausted : public Error {
 public:
  using Error::Error;
};

class OracleTooLarge : public Error {
 public:
  using Error::Error;
};

class DegenerateInput : public Error {
 public:
  using Error::Error;
};

class TrivialScheme : public Error {
 public:
  using Error::Error;
};

class DegenerateScheme : public Error {
 public:
  using Error::Error;
};

class EvaluationAborted : public Error {
 public:
  using Error::Error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t offset)
      : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace zol
