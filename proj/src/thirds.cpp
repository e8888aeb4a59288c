#include "pfa/thirds.hpp"

#include "pfa/core.hpp"

namespace pfa {

Word ThirdsReduction::encode(const Word& w, std::size_t p) const {
  Word out;
  out.reserve(w.size() * (p + 1));
  for (auto a : w) {
    if (a.index >= source.num_letters())
      throw AlphabetError("letter #" + std::to_string(a.index) + " is not a source letter");
    out.push_back(a);
    out.insert(out.end(), p, sharp);
  }
  return out;
}

ThirdsReduction build_thirds(const Pfa& source) {
  if (auto v = validate(source); !v.empty()) throw ReductionError("source automaton is invalid: " + v.front().message);
  const auto n = source.num_states();
  const auto m = source.num_letters();

  ThirdsReduction r;
  r.source = source;

  TargetNames names;
  for (const auto& q : source.state_names()) names.add_state(q);
  for (const auto& a : source.letter_names()) names.add_letter(a);
  r.sharp = names.add_letter(GadgetLetter::sharp().name());

  std::vector<std::pair<StateId, StateId>> successors(n * m);
  for (std::uint32_t q = 0; q < n; ++q)
    for (std::uint32_t a = 0; a < m; ++a) {
      auto succ = simple_successors(source, LetterId{a}, StateId{q});
      successors[q * m + a] = succ;
      if (succ.first == succ.second) continue;
      const auto& qn = source.state_names()[q];
      const auto& an = source.letter_names()[a];
      ThirdsReduction::Coin c;
      c.source_state = StateId{q};
      c.letter = LetterId{a};
      c.entry = names.add_state(GadgetState{GadgetState::Kind::CoinEntry, qn, an}.name());
      c.low = names.add_state(GadgetState{GadgetState::Kind::CoinLow, qn, an}.name());
      c.high = names.add_state(GadgetState{GadgetState::Kind::CoinHigh, qn, an}.name());
      c.r0 = succ.first;
      c.r1 = succ.second;
      r.coins.push_back(c);
    }
  if (!r.coins.empty()) r.lost = names.add_state(GadgetState{GadgetState::Kind::CoinLost, {}, {}}.name());

  r.target = Pfa(names.take_states(), names.take_letters(), source.initial(), source.accepting());

  for (std::uint32_t q = 0; q < n; ++q)
    for (std::uint32_t a = 0; a < m; ++a) r.target.set_row(LetterId{a}, StateId{q}, source.row(LetterId{a}, StateId{q}));

  const Rational third(1, 3), two_thirds(2, 3);
  for (const auto& c : r.coins) {
    r.target.set_row(c.letter, c.source_state, dirac_row(c.entry));
    r.target.set_row(r.sharp, c.entry, {{c.low, third}, {c.high, two_thirds}});
    r.target.set_row(r.sharp, c.low, {{c.entry, third}, {c.r0, two_thirds}});
    r.target.set_row(r.sharp, c.high, {{c.entry, two_thirds}, {c.r1, third}});
    for (std::uint32_t a = 0; a < m; ++a)
      for (auto s : {c.entry, c.low, c.high}) r.target.set_row(LetterId{a}, s, dirac_row(*r.lost));
  }
  return r;
}

ThirdsReport verify_thirds(const ThirdsReduction& r, const Word& w, std::size_t p_max) {
  ThirdsReport rep;
  rep.source_prob = accept_prob(r.source, w);
  for (std::size_t p = 0; p <= p_max; ++p) rep.f.push_back(accept_prob(r.target, r.encode(w, 2 * p)));

  rep.monotone = true;
  rep.bounded = true;
  rep.lower_bound = true;
  const Rational keep(5, 9);
  for (std::size_t p = 0; p <= p_max; ++p) {
    if (p > 0 && rep.f[p] < rep.f[p - 1]) rep.monotone = false;
    if (rep.f[p] > rep.source_prob) rep.bounded = false;
    Rational floor = rep.source_prob * pow(Rational(1) - pow(keep, static_cast<unsigned>(p)), static_cast<unsigned>(w.size()));
    if (rep.f[p] < floor) rep.lower_bound = false;
  }
  rep.residual = rep.source_prob - rep.f.back();
  rep.ok = rep.monotone && rep.bounded && rep.lower_bound;
  return rep;
}

}  // namespace pfa
