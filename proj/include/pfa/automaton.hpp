#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pfa/rational.hpp"

namespace pfa {

/// Ordinal of a state in its automaton's declared state list.
struct StateId {
  std::uint32_t index = 0;
  friend auto operator<=>(StateId, StateId) = default;
};

/// Ordinal of a letter in its automaton's declared alphabet.
struct LetterId {
  std::uint32_t index = 0;
  friend auto operator<=>(LetterId, LetterId) = default;
};

using Word = std::vector<LetterId>;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a letter or state does not belong to the automaton it is used with.
class AlphabetError : public Error {
 public:
  using Error::Error;
};

struct Entry {
  StateId target;
  Rational prob;
  friend bool operator==(const Entry&, const Entry&) = default;
};

/// One row of a transition matrix: sparse, sorted by target, no zero entries.
using Row = std::vector<Entry>;

Row dirac_row(StateId target);

/// Sorts by target, merges duplicate targets and drops zero entries.
Row normalize_row(Row row);

/// Exact distribution over the states of one automaton, stored sparsely.
class Distribution {
 public:
  Distribution() = default;
  explicit Distribution(Row entries);

  static Distribution dirac(StateId state);

  /// Mass on `state` (zero when absent).
  Rational operator[](StateId state) const;
  Rational total() const;

  const Row& entries() const { return entries_; }
  std::size_t support_size() const { return entries_.size(); }

  Distribution scaled(const Rational& factor) const;
  friend Distribution operator+(const Distribution& a, const Distribution& b);

  friend bool operator==(const Distribution& a, const Distribution& b) { return a.entries_ == b.entries_; }
  friend bool operator<(const Distribution& a, const Distribution& b);

 private:
  Row entries_;
};

/// A probabilistic finite automaton (Q, A, (M_a), q0, F).
///
/// Rows default to identity self-loops. The object does not enforce stochasticity
/// on construction so that malformed inputs can be inspected with `validate`.
class Pfa {
 public:
  Pfa() = default;
  Pfa(std::vector<std::string> states, std::vector<std::string> alphabet, StateId initial,
      std::vector<StateId> accepting);

  std::size_t num_states() const { return state_names_.size(); }
  std::size_t num_letters() const { return letter_names_.size(); }

  const std::vector<std::string>& state_names() const { return state_names_; }
  const std::vector<std::string>& letter_names() const { return letter_names_; }
  const std::string& state_name(StateId s) const { return state_names_.at(s.index); }
  const std::string& letter_name(LetterId a) const { return letter_names_.at(a.index); }

  std::optional<StateId> find_state(std::string_view name) const;
  std::optional<LetterId> find_letter(std::string_view name) const;
  /// Like find_*, but throws AlphabetError.
  StateId state(std::string_view name) const;
  LetterId letter(std::string_view name) const;

  StateId initial() const { return initial_; }
  const std::vector<StateId>& accepting() const { return accepting_; }
  bool is_accepting(StateId s) const;

  void set_initial(StateId s) { initial_ = s; }
  void set_accepting(std::vector<StateId> accepting);

  /// Row M_a(s, _). Throws AlphabetError for out-of-range ids.
  const Row& row(LetterId a, StateId s) const;
  void set_row(LetterId a, StateId s, Row row);
  bool is_identity_row(LetterId a, StateId s) const;

  /// Parses a dot-separated word (`a.b.check[a,q0]`); the empty string is the empty word.
  Word word(std::string_view dotted) const;
  std::string format_word(const Word& w) const;

  friend bool operator==(const Pfa&, const Pfa&) = default;

 private:
  void check_letter(LetterId a) const;
  void check_state(StateId s) const;

  std::vector<std::string> state_names_;
  std::vector<std::string> letter_names_;
  // rows_[letter][state]
  std::vector<std::vector<Row>> rows_;
  StateId initial_{};
  std::vector<StateId> accepting_;
  std::vector<bool> accepting_mask_;
};

}  // namespace pfa
