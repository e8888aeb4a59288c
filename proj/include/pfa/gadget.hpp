#pragma once

#include <string>
#include <vector>

#include "pfa/automaton.hpp"

namespace pfa {

/// Raised when a reduction's input is outside the class it accepts.
class ReductionError : public Error {
 public:
  using Error::Error;
};

/// Fresh letters introduced by the reductions. Check/Apply carry the simulated
/// source letter and source state (by name).
struct GadgetLetter {
  enum class Kind { Check, Apply, Star, Merge, Finish, Sharp };
  Kind kind;
  std::string letter;
  std::string state;

  static GadgetLetter check(std::string a, std::string q) { return {Kind::Check, std::move(a), std::move(q)}; }
  static GadgetLetter apply(std::string a, std::string q) { return {Kind::Apply, std::move(a), std::move(q)}; }
  static GadgetLetter star() { return {Kind::Star, {}, {}}; }
  static GadgetLetter merge() { return {Kind::Merge, {}, {}}; }
  static GadgetLetter finish() { return {Kind::Finish, {}, {}}; }
  static GadgetLetter sharp() { return {Kind::Sharp, {}, {}}; }

  /// `check[a,q]`, `apply[a,q]`, `star`, `merge`, `finish`, `sharp`.
  std::string name() const;
  friend bool operator==(const GadgetLetter&, const GadgetLetter&) = default;
};

/// Fresh states introduced by the reductions.
struct GadgetState {
  enum class Kind {
    Orig,       // q
    Barred,     // bar[q]
    SStar,      // s_star
    S0,         // s0
    S1,         // s1
    Wait,       // wait
    Bottom,     // bot
    CState,     // c<index>
    CoinEntry,  // g[q,a]
    CoinLow,    // h0[q,a]
    CoinHigh,   // h1[q,a]
    CoinLost,   // lost
  };
  Kind kind;
  std::string state;
  std::string letter;
  std::size_t index = 0;

  std::string name() const;
};

/// Letter-to-word homomorphism A* -> B*.
class Morphism {
 public:
  Morphism() = default;
  explicit Morphism(std::vector<Word> images) : images_(std::move(images)) {}

  const Word& image(LetterId a) const;
  const std::vector<Word>& images() const { return images_; }
  std::size_t domain_size() const { return images_.size(); }

  /// Concatenation of the images of the letters of `w`. Throws AlphabetError on
  /// letters outside the domain.
  Word encode(const Word& w) const;

  /// Inverse on image words: splits `w` into whole images. Returns nullopt if `w`
  /// is not in the image of the morphism.
  std::optional<Word> decode(const Word& w) const;

 private:
  std::vector<Word> images_;
};

/// Accumulates named states and letters for a reduction target and rejects name
/// collisions, so that source names and gadget names never alias.
class TargetNames {
 public:
  StateId add_state(std::string name);
  LetterId add_letter(std::string name);

  std::vector<std::string> take_states() { return std::move(states_); }
  std::vector<std::string> take_letters() { return std::move(letters_); }

 private:
  std::vector<std::string> states_;
  std::vector<std::string> letters_;
};

}  // namespace pfa
