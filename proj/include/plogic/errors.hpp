#ifndef PLOGIC_ERRORS_HPP
#define PLOGIC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace plogic {

// Formula text could not be tokenized or parsed.
struct ParseError : std::runtime_error {
  int line;
  int column;
  ParseError(const std::string& msg, int line_, int column_)
      : std::runtime_error(msg + " at " + std::to_string(line_) + ":" +
                           std::to_string(column_)),
        line(line_),
        column(column_) {}
};

// An enumeration or search was asked to exceed its configured limits.
struct BudgetError : std::runtime_error {
  explicit BudgetError(const std::string& msg) : std::runtime_error(msg) {}
};

// A model, event or formula violates a structural requirement
// (bad kernel row, unknown letter, knowledge operator on a bare type space, ...).
struct ModelError : std::runtime_error {
  explicit ModelError(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised by the exact LP layer for infeasible or unbounded optimization calls.
struct LpError : std::runtime_error {
  explicit LpError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace plogic

#endif
