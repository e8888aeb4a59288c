#pragma once

#include <optional>
#include <vector>

#include "pfa/automaton.hpp"
#include "pfa/gadget.hpp"
#include "pfa/syntactic_dfa.hpp"

namespace pfa {

/// Simulation of a simple PFA by one with a single probabilistic transition
/// (s_star, star), exact on the image of the morphism.
///
/// Each source letter a is encoded as
///   check[a,q0].star.apply[a,q0] ... check[a,q_{n-1}].star.apply[a,q_{n-1}].merge
/// Check moves the thread on q to s_star, star flips the only coin, apply writes the
/// successor of (q, a) into a barred copy, and merge flushes barred copies back.
struct OneCoinReduction {
  Pfa source;
  Pfa target;
  Morphism morphism;

  std::vector<StateId> orig;    // by source state index
  std::vector<StateId> barred;  // by source state index
  StateId s_star, s0, s1;
  LetterId star, merge;
  std::vector<std::vector<LetterId>> check;  // [source letter][source state]
  std::vector<std::vector<LetterId>> apply;  // [source letter][source state]

  Word encode(const Word& w) const { return morphism.encode(w); }
};

/// Throws ReductionError if `source` is invalid or not simple.
OneCoinReduction build_one_coin(const Pfa& source);

/// DFA for the image language {encode(w) | w in A*} over the target alphabet.
SyntacticDfa image_dfa(const OneCoinReduction& r);

struct OneCoinReport {
  bool verified = false;
  std::size_t words_checked = 0;
  std::optional<Word> counterexample;  // source word
  Rational source_prob, target_prob;   // at the counterexample
};

/// Checks Pr_source(w) = Pr_target(encode(w)) for every source word of length <= max_len.
OneCoinReport verify_one_coin(const OneCoinReduction& r, std::size_t max_len);

struct EscapeWitness {
  Word word;               // over the target alphabet, outside the image language
  Word honest;             // the matching image word for comparison
  Rational s_star_mass;    // mass routed through s_star by the mismatched gadget
  Rational witness_prob;   // Pr_target(word)
  Rational honest_prob;    // Pr_target(honest)
};

/// A check[a,q].star.apply[a,q'] mismatch (q != q') the target processes without
/// noticing: after s_star the thread no longer knows it came from q. Returns nullopt
/// for sources with fewer than two states or no probabilistic transition.
std::optional<EscapeWitness> image_escape_witness(const OneCoinReduction& r);

/// Splits a simple-PFA row into its two successors (equal for a deterministic row).
/// Throws ReductionError for any other shape.
std::pair<StateId, StateId> simple_successors(const Pfa& p, LetterId a, StateId q);

}  // namespace pfa
