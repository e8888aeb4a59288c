#pragma once

#include <string>
#include <string_view>

#include "pfa/automaton.hpp"

namespace pfa {

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message), line_(line), column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_, column_;
};

/// Reads the line-oriented automaton format:
///
///   pfa
///   states: q0 q1
///   alphabet: a b
///   initial: q0
///   accepting: q1
///   trans a q0 -> 1/2 q0, 1/2 q1
///
/// `#` starts a comment. Rows without a `trans` line are identity self-loops.
/// Syntax and reference errors throw ParseError (1-based line and column);
/// stochasticity is left to `validate`.
Pfa parse(std::string_view text);

/// Canonical text: declaration order, identity rows omitted, lowest-terms probabilities.
std::string serialize(const Pfa& p);

/// The grammar above, for usage messages.
std::string_view grammar_help();

}  // namespace pfa
