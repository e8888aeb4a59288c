#pragma once

#include <optional>
#include <vector>

#include "pfa/automaton.hpp"
#include "pfa/one_coin.hpp"

namespace pfa {

/// Replacement of every fair coin (q, a) -> 1/2 r0 + 1/2 r1 by a sharp-driven
/// gadget whose entries are only 1/3 and 2/3:
///
///   q  --a-->      g
///   g  --sharp-->  1/3 h0 + 2/3 h1
///   h0 --sharp-->  1/3 g  + 2/3 r0
///   h1 --sharp-->  2/3 g  + 1/3 r1
///
/// Each two-sharp round sends 2/9 to r0, 2/9 to r1 and returns 5/9 to g. A source
/// letter read while a thread is still inside a gadget drops it into the absorbing
/// `lost` state.
struct ThirdsReduction {
  struct Coin {
    StateId source_state;
    LetterId letter;
    StateId entry, low, high;  // g, h0, h1
    StateId r0, r1;            // source successors, r0 < r1
  };

  Pfa source;
  Pfa target;  // source states and letters keep their ids
  LetterId sharp;
  std::vector<Coin> coins;
  std::optional<StateId> lost;

  /// a0.sharp^p.a1.sharp^p ... a_{k-1}.sharp^p
  Word encode(const Word& w, std::size_t p) const;
};

ThirdsReduction build_thirds(const Pfa& source);

inline Word encode_thirds(const ThirdsReduction& r, const Word& w, std::size_t p) { return r.encode(w, p); }

struct ThirdsReport {
  bool ok = false;
  Rational source_prob;
  /// f[p] = Pr_target(encode(w, 2p)) for p = 0..p_max.
  std::vector<Rational> f;
  bool monotone = false;
  bool bounded = false;      // f[p] <= Pr_source(w)
  bool lower_bound = false;  // f[p] >= Pr_source(w) * (1 - (5/9)^p)^|w|
  Rational residual;         // Pr_source(w) - f[p_max]
};

/// Sweeps the two-sharp round count p = 0..p_max for one source word.
ThirdsReport verify_thirds(const ThirdsReduction& r, const Word& w, std::size_t p_max);

}  // namespace pfa
