#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace topomu {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Parse failure, reported with the byte offset of the offending token and
// the set of tokens that would have been accepted there.
struct SyntaxError : Error {
  SyntaxError(std::string msg, size_t offset, std::vector<std::string> expected)
      : Error(std::move(msg)), offset(offset), expected(std::move(expected)) {}
  size_t offset;
  std::vector<std::string> expected;
};

// A bound variable occurs under an odd number of negations; path walks from
// the binder to the offending occurrence.
struct NotPositiveError : Error {
  NotPositiveError(std::string variable, std::vector<std::string> path)
      : Error("variable '" + variable + "' occurs under an odd number of negations"),
        variable(std::move(variable)),
        path(std::move(path)) {}
  std::string variable;
  std::vector<std::string> path;
};

struct UnboundVariableError : Error {
  explicit UnboundVariableError(const std::string& name)
      : Error("unbound variable '" + name + "'"), name(name) {}
  std::string name;
};

struct NotWeaklyTransitiveError : Error {
  explicit NotWeaklyTransitiveError(std::string msg = "frame is not weakly transitive")
      : Error(std::move(msg)) {}
};

struct InvalidInputError : Error {
  using Error::Error;
};

struct FormatError : Error {
  using Error::Error;
};

struct WrongClassError : Error {
  WrongClassError(std::string msg, std::vector<int> witness)
      : Error(std::move(msg)), witness(std::move(witness)) {}
  std::vector<int> witness;
};

struct NotABisimulationError : Error {
  using Error::Error;
};

struct TimeBudgetExceededError : Error {
  TimeBudgetExceededError(std::string msg, std::string progress)
      : Error(std::move(msg)), progress(std::move(progress)) {}
  std::string progress;
};

}  // namespace topomu
