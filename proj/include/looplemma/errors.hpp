#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace looplemma {

  // Base class for every error raised by the library.
  class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  class InvalidArgument : public Error {
   public:
    using Error::Error;
  };

  // A documented precondition of an operation does not hold for the input.
  class PreconditionError : public Error {
   public:
    using Error::Error;
  };

  // A size budget (closure cap, star-power leaves, exhaustive word count)
  // would be exceeded. `required` is the amount the operation asked for.
  class BudgetExceeded : public Error {
   public:
    BudgetExceeded(std::string const& what, std::size_t required, std::size_t budget)
        : Error(what + " (required " + std::to_string(required) + ", budget "
                + std::to_string(budget) + ")"),
          required_(required),
          budget_(budget) {}

    std::size_t required() const noexcept { return required_; }
    std::size_t budget() const noexcept { return budget_; }

   private:
    std::size_t required_;
    std::size_t budget_;
  };

  class ParseError : public Error {
   public:
    using Error::Error;
  };

}  // namespace looplemma
