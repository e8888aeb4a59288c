#pragma once

#include <optional>
#include <vector>

#include "pfa/automaton.hpp"
#include "pfa/gadget.hpp"

namespace pfa {

/// Complete DFA over a reduction's target alphabet recognising an image language:
/// either (image words)* or, with a separator, ({encode(w)·separator | w})*.
///
/// State 0 is the start state. The dead state is always the last one.
class SyntacticDfa {
 public:
  /// Builds the block-cycle automaton for `morphism`. Images must be non-empty and
  /// prefix-free. `alphabet_size` is the size of the target alphabet.
  static SyntacticDfa build(std::size_t alphabet_size, const Morphism& morphism,
                            std::optional<LetterId> separator);

  std::size_t num_states() const { return delta_.size(); }
  std::size_t alphabet_size() const { return alphabet_size_; }
  std::uint32_t start() const { return 0; }
  std::uint32_t dead() const { return static_cast<std::uint32_t>(delta_.size() - 1); }
  bool is_accepting(std::uint32_t q) const { return accepting_.at(q); }
  std::uint32_t next(std::uint32_t q, LetterId a) const { return delta_.at(q).at(a.index); }

  std::uint32_t run(const Word& w, std::uint32_t from = 0) const;
  bool accepts(const Word& w) const { return is_accepting(run(w)); }

  /// Position of the letter that sends the run into the dead state, if any.
  std::optional<std::size_t> first_deviation(const Word& w) const;

 private:
  std::size_t alphabet_size_ = 0;
  std::vector<std::vector<std::uint32_t>> delta_;
  std::vector<bool> accepting_;
};

}  // namespace pfa
