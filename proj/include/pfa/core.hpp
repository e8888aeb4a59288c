#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pfa/automaton.hpp"

namespace pfa {

struct Violation {
  std::string message;
  std::optional<LetterId> letter;
  std::optional<StateId> state;
};

/// Checks every structural invariant of `p`. Violations are returned, never thrown.
std::vector<Violation> validate(const Pfa& p);

/// d·a. Throws AlphabetError when `a` is not a letter of `p`.
Distribution step(const Pfa& p, const Distribution& d, LetterId a);

/// d·w, the left fold of `step`.
Distribution run(const Pfa& p, const Distribution& d, const Word& w);

/// Probability of being in `targets` after reading `w` from `s`.
Rational reach_prob(const Pfa& p, StateId s, const Word& w, const std::vector<StateId>& targets);

/// Mass of `d` on the accepting states of `p`.
Rational accepting_mass(const Pfa& p, const Distribution& d);

/// Pr_p(w): acceptance probability from the initial state.
Rational accept_prob(const Pfa& p, const Word& w);

struct ProbTransition {
  StateId source;
  LetterId letter;
  friend bool operator==(const ProbTransition&, const ProbTransition&) = default;
};

/// The couples (s, a) whose row has an entry outside {0, 1}, ordered by state then letter.
std::vector<ProbTransition> prob_transitions(const Pfa& p);

/// All entries in {0, 1/2, 1}.
bool is_simple(const Pfa& p);
/// All entries in {0, 1/3, 2/3, 1}.
bool is_thirds(const Pfa& p);

/// Every word over `alphabet_size` letters of length <= max_len, shortest first then
/// lexicographic by letter index.
std::vector<Word> all_words(std::size_t alphabet_size, std::size_t max_len);

}  // namespace pfa
