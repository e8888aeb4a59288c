#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pfa/automaton.hpp"
#include "pfa/gadget.hpp"
#include "pfa/syntactic_dfa.hpp"

namespace pfa {

/// Only the value-1 question is supported; other thresholds need a gadget that is
/// not constructed here.
class UnsupportedLambda : public ReductionError {
 public:
  using ReductionError::ReductionError;
};

/// Value-preserving simulation of a thirds-form PFA with one probabilistic
/// transition: val(source) = 1 iff val(target) = 1.
///
/// Each source letter a is encoded as
///   check[a,q0].star.star.apply[a,q0] ... check[a,q_{n-1}].star.star.apply[a,q_{n-1}].merge
/// and words are fed in blocks terminated by `finish`. The two stars send a thread
/// on s_star to s1 w.p. 1/2, s0 w.p. 1/4 and leave 1/4 on s_star, which the apply
/// letter sweeps into `wait`; so every simulated step keeps 3/4 of the mass. At
/// `finish`, waiting mass restarts from q0 and accepted mass enters the embedded
/// syntactic automaton, which stays accepting only while the rest of the input is
/// a sequence of image blocks.
struct ValueReduction {
  Pfa source;
  Pfa target;
  Morphism morphism;
  SyntacticDfa checker;

  std::vector<StateId> orig, barred;  // by source state index
  std::vector<StateId> cstates;       // by checker state, the dead state maps to `bottom`
  StateId s_star, s0, s1, wait, bottom;
  LetterId star, merge, finish;
  std::vector<std::vector<LetterId>> check, apply;  // [source letter][source state]

  Word encode(const Word& w) const { return morphism.encode(w); }
  /// (encode(w).finish)^repeat
  Word encode_blocks(const Word& w, std::size_t repeat) const;
  /// A distribution over source states, placed on the Orig copies.
  Distribution lift(const Distribution& source_dist) const;
};

/// Requires a valid thirds-form source whose probabilistic rows are 1/3-2/3 splits.
/// `lambda` must be 1.
ValueReduction build_value_preserving(const Pfa& source, const Rational& lambda = 1);

/// The source itself when already in thirds form, otherwise the thirds gadget
/// target of a simple source.
Pfa thirds_normal_form(const Pfa& p);

/// Syntactic automaton for ({encode(w).finish | w})* over the target alphabet.
SyntacticDfa build_syntactic_dfa(const ValueReduction& r);

/// Successors of a thirds-form row: (1/3-target, 2/3-target), equal when deterministic.
std::pair<StateId, StateId> thirds_successors(const Pfa& p, LetterId a, StateId q);

struct Blocks {
  std::vector<Word> blocks;   // finish-free factors, each followed by finish in the input
  std::vector<std::size_t> offsets;
  Word remainder;             // trailing finish-free suffix
  bool has_remainder = false;
};

Blocks block_decompose(const Word& w, LetterId finish);

struct ValueReport {
  bool ok = false;
  Rational source_prob;
  std::size_t k = 0;
  /// Index p-1 holds Pr_target((encode(w).finish)^p) and its closed form.
  std::vector<Rational> actual, expected;
  bool closed_form = false;
  bool monotone = false;
  bool bounded = false;
  Rational residual;  // source_prob - actual.back()
};

/// Checks Pr_target((encode(w).finish)^p) = Pr(w) (1 - (1 - (3/4)^k)^p) for p = 1..p_max.
ValueReport verify_value_preserving(const ValueReduction& r, const Word& w, std::size_t p_max);

struct KeyObservationReport {
  bool ok = false;
  Rational max_prob;
  Word argmax;                 // finish-free block over the target alphabet
  std::size_t image_blocks = 0;
  std::size_t perturbations = 0;
  std::size_t exempt = 0;      // blocks that never move the initial thread
  std::optional<Word> violation;
};

/// Single blocks u.finish: every image block encode(w) with 1 <= |w| <= bound plus
/// `perturbations` seeded mutations of them. Blocks that check the initial state
/// must be accepted with probability <= 3/4; blocks that never do must be accepted
/// with probability exactly [q0 in F].
KeyObservationReport key_observation_check(const ValueReduction& r, std::size_t bound,
                                           std::size_t perturbations = 100, std::uint64_t seed = 1);

struct Recovery {
  bool ok = false;
  std::vector<std::optional<Word>> decoded;  // per block, source word when the block is an image
  std::optional<std::size_t> first_live_block;  // first block after which the checker holds mass
  std::optional<std::size_t> deviation;         // position in the input where discipline breaks
  std::string reason;
};

/// Slices `w` into finish-terminated blocks and decodes them. Every block after the
/// first one that feeds the syntactic checker must be an image block.
Recovery recover_source_word(const ValueReduction& r, const Word& w);

}  // namespace pfa
