#ifndef AUTOSTACK_ERROR_HPP_
#define AUTOSTACK_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace autostack {

  class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  // Input that cannot be parsed or does not satisfy a documented invariant.
  class ParseError : public Error {
   public:
    using Error::Error;
  };

  class AlphabetMismatch : public Error {
   public:
    using Error::Error;
  };

  class NotNormalForm : public Error {
   public:
    using Error::Error;
  };

  // No rule guard (or more than one) accepts the source of an edge.
  class CoverageViolation : public Error {
   public:
    using Error::Error;
  };

  // The flow recursion ran past its step budget.
  class BudgetExceeded : public Error {
   public:
    using Error::Error;
  };

  class Unsupported : public Error {
   public:
    using Error::Error;
  };

  class TableMissing : public Error {
   public:
    using Error::Error;
  };

}  // namespace autostack

#endif  // AUTOSTACK_ERROR_HPP_
