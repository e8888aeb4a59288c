#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pfa/automaton.hpp"
#include "pfa/syntactic_dfa.hpp"

namespace pfa {

/// Best acceptance probability found among words of length <= length_bound.
/// A lower bound on the value of the automaton.
struct ValueEstimate {
  Word best_word;
  Rational best_prob;
  std::size_t words_explored = 0;
  std::size_t length_bound = 0;
};

/// Breadth-first search over words of length <= max_len. Prefixes that reach the
/// same exact distribution (and checker state, when restricted) share their
/// continuations. With `restrict_to`, only words accepted by the DFA count and
/// prefixes that kill the DFA are pruned. Ties go to the shortest, then
/// lexicographically smallest word.
ValueEstimate estimate_value(const Pfa& p, std::size_t max_len, const SyntacticDfa* restrict_to = nullptr);

/// Same result by plain enumeration of every word; used as an oracle.
ValueEstimate estimate_value_brute_force(const Pfa& p, std::size_t max_len);

/// Semi-test for the isolation problem: the smallest |Pr(w) - lambda| among words of
/// length <= max_len. Undecidable in general; a zero gap is conclusive, a positive
/// one is not.
struct IsolationReport {
  Rational lambda;
  Rational min_gap;
  Word witness;
  std::size_t length_bound = 0;
  std::size_t words_explored = 0;
};

IsolationReport isolation_probe(const Pfa& p, const Rational& lambda, std::size_t max_len);

/// Reproducible random simple PFA. States are q0..q{n-1}, letters a, b, c, ...
/// Every row is deterministic or a 1/2-1/2 split over two distinct states; at least
/// one row is probabilistic when states > 1.
Pfa random_simple_pfa(std::size_t states, std::size_t letters, std::uint64_t seed);

/// Same, with 1/3-2/3 splits instead of fair coins.
Pfa random_thirds_pfa(std::size_t states, std::size_t letters, std::uint64_t seed);

struct SweepConfig {
  std::size_t trials = 0;
  std::size_t max_states = 4;
  std::size_t max_letters = 2;
  std::size_t max_len = 4;       // one-coin and thirds words
  std::size_t p_max = 3;         // thirds rounds and value repetitions
  std::size_t value_max_len = 2; // value-preserving words over the thirds alphabet
  std::uint64_t seed = 1;
  /// Trial whose one-coin target gets one row corrupted before verification.
  std::optional<std::size_t> mutate_trial;
};

struct SweepTrial {
  std::size_t index = 0;
  std::size_t states = 0, letters = 0;
  bool one_coin = false, thirds = false, value = false;
  std::string failure;  // first failure, with witness word
};

struct SweepReport {
  std::vector<SweepTrial> trials;
  std::size_t passed() const;
  bool all_passed() const { return passed() == trials.size(); }
};

SweepReport equivalence_sweep(const SweepConfig& config);

}  // namespace pfa
