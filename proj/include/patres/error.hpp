#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace patres {

enum class Errc {
  EmptyClauseInput,
  InvalidLiteral,
  UnmappedVariable,
  IterationCapExceeded,
  LengthMismatch,
  IndexOutOfRange,
  TooLarge,
  VariableAbsent,
  EmptySet,
  IncompleteAssignment,
  TooManyVariables,
  UnsupportedOrder,
  InfeasibleParameters,
  ParseError,
  RecursionCapExceeded,
};

const char *errcName(Errc c);

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string &what)
      : std::runtime_error(std::string(errcName(code)) + ": " + what),
        code_(code) {}
  Errc code() const { return code_; }

private:
  Errc code_;
};

// Thrown by the renaming fixpoint when it fails to reach the identity
// mapping within its cap. The trace holds the rendered set after each round.
class IterationCapError : public Error {
public:
  IterationCapError(const std::string &what, std::vector<std::string> trace)
      : Error(Errc::IterationCapExceeded, what), trace(std::move(trace)) {}
  std::vector<std::string> trace;
};

} // namespace patres
