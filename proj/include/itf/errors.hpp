#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace itf {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Bad arguments: dimensions, indices, parameters.
struct InvalidArgument : Error {
  using Error::Error;
};

/// An edge would give some vertex two neighbours inside one pair of parts.
struct MatchingViolation : Error {
  using Error::Error;
};

struct DegreeDeficit : Error {
  using Error::Error;
};

/// Fewer flagged pairs than the number a reshuffle must retain.
struct InsufficientMatching : Error {
  using Error::Error;
};

struct ExactModeTooLarge : Error {
  using Error::Error;
};

struct BudgetExceeded : Error {
  BudgetExceeded(const std::string& what, std::size_t nodes, std::size_t depth)
      : Error(what), nodes_explored(nodes), deepest_level(depth) {}
  std::size_t nodes_explored;
  std::size_t deepest_level;
};

/// Input text could not be parsed. `line` is 1-based, 0 when not applicable.
/// `matching_violation` marks inputs that parse but break the per-pair
/// matching property.
struct ParseError : Error {
  ParseError(const std::string& what, std::size_t line_no, std::string field_name,
             bool violation = false)
      : Error(what), line(line_no), field(std::move(field_name)), matching_violation(violation) {}
  std::size_t line;
  std::string field;
  bool matching_violation;
};

/// An internal guarantee failed; always a bug.
struct InvariantViolation : Error {
  using Error::Error;
};

}  // namespace itf
