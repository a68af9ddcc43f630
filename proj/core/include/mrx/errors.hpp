#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mrx {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text (DIMACS, literal lists, PDDL, explanation records).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  explicit ParseError(const std::string& what) : Error(what) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_ = 0;
};

/// A caller broke an operation's precondition (e.g. a seed inconsistent with
/// the hard clauses handed to MCS extraction).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// The defining premises of a reconciliation problem do not hold
/// (agent KB does not entail the query, or the agent KB is inconsistent).
class PremiseError : public Error {
 public:
  using Error::Error;
};

/// An enumeration or search would exceed its configured size cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

class PlanningError : public Error {
 public:
  using Error::Error;
};

}  // namespace mrx
