#include "pfa/one_coin.hpp"

#include "pfa/core.hpp"

namespace pfa {

std::pair<StateId, StateId> simple_successors(const Pfa& p, LetterId a, StateId q) {
  const Row& row = p.row(a, q);
  const Rational half(1, 2);
  if (row.size() == 1 && row[0].prob == 1) return {row[0].target, row[0].target};
  if (row.size() == 2 && row[0].prob == half && row[1].prob == half) return {row[0].target, row[1].target};
  std::string entries;
  for (const auto& e : row) entries += " " + to_string(e.prob) + " " + p.state_name(e.target);
  throw ReductionError("row (" + p.letter_name(a) + ", " + p.state_name(q) + ") is not simple:" + entries);
}

namespace {

void require_valid(const Pfa& p) {
  auto violations = validate(p);
  if (!violations.empty()) throw ReductionError("source automaton is invalid: " + violations.front().message);
}

}  // namespace

OneCoinReduction build_one_coin(const Pfa& source) {
  require_valid(source);
  const auto n = source.num_states();
  const auto m = source.num_letters();

  OneCoinReduction r;
  r.source = source;

  TargetNames names;
  for (const auto& q : source.state_names()) r.orig.push_back(names.add_state(GadgetState{GadgetState::Kind::Orig, q, {}}.name()));
  for (const auto& q : source.state_names())
    r.barred.push_back(names.add_state(GadgetState{GadgetState::Kind::Barred, q, {}}.name()));
  r.s_star = names.add_state(GadgetState{GadgetState::Kind::SStar, {}, {}}.name());
  r.s0 = names.add_state(GadgetState{GadgetState::Kind::S0, {}, {}}.name());
  r.s1 = names.add_state(GadgetState{GadgetState::Kind::S1, {}, {}}.name());

  r.star = names.add_letter(GadgetLetter::star().name());
  r.merge = names.add_letter(GadgetLetter::merge().name());
  r.check.assign(m, {});
  r.apply.assign(m, {});
  for (std::uint32_t a = 0; a < m; ++a)
    for (std::uint32_t q = 0; q < n; ++q) {
      const auto& an = source.letter_names()[a];
      const auto& qn = source.state_names()[q];
      r.check[a].push_back(names.add_letter(GadgetLetter::check(an, qn).name()));
      r.apply[a].push_back(names.add_letter(GadgetLetter::apply(an, qn).name()));
    }

  std::vector<StateId> accepting;
  for (auto f : source.accepting()) accepting.push_back(r.orig[f.index]);
  r.target = Pfa(names.take_states(), names.take_letters(), r.orig[source.initial().index], std::move(accepting));

  const Rational half(1, 2);
  r.target.set_row(r.star, r.s_star, {{r.s0, half}, {r.s1, half}});
  for (std::uint32_t q = 0; q < n; ++q) r.target.set_row(r.merge, r.barred[q], dirac_row(r.orig[q]));

  std::vector<Word> images(m);
  for (std::uint32_t a = 0; a < m; ++a) {
    for (std::uint32_t q = 0; q < n; ++q) {
      auto [lo, hi] = simple_successors(source, LetterId{a}, StateId{q});
      r.target.set_row(r.check[a][q], r.orig[q], dirac_row(r.s_star));
      r.target.set_row(r.apply[a][q], r.s0, dirac_row(r.barred[lo.index]));
      r.target.set_row(r.apply[a][q], r.s1, dirac_row(r.barred[hi.index]));
      images[a].insert(images[a].end(), {r.check[a][q], r.star, r.apply[a][q]});
    }
    images[a].push_back(r.merge);
  }
  r.morphism = Morphism(std::move(images));
  return r;
}

SyntacticDfa image_dfa(const OneCoinReduction& r) {
  return SyntacticDfa::build(r.target.num_letters(), r.morphism, std::nullopt);
}

OneCoinReport verify_one_coin(const OneCoinReduction& r, std::size_t max_len) {
  OneCoinReport report;
  for (const auto& w : all_words(r.source.num_letters(), max_len)) {
    ++report.words_checked;
    auto ps = accept_prob(r.source, w);
    auto pt = accept_prob(r.target, r.encode(w));
    if (ps != pt) {
      report.counterexample = w;
      report.source_prob = ps;
      report.target_prob = pt;
      return report;
    }
  }
  report.verified = true;
  return report;
}

std::optional<EscapeWitness> image_escape_witness(const OneCoinReduction& r) {
  const auto& src = r.source;
  if (src.num_states() < 2) return std::nullopt;
  auto coins = prob_transitions(src);
  if (coins.empty()) return std::nullopt;

  const StateId q = src.initial();
  const LetterId a = coins.front().letter;
  StateId other = coins.front().source;
  if (other == q) other = StateId{q.index == 0 ? 1u : 0u};

  EscapeWitness w;
  w.honest = {r.check[a.index][q.index], r.star, r.apply[a.index][q.index], r.merge};
  w.word = {r.check[a.index][q.index], r.star, r.apply[a.index][other.index], r.merge};

  const auto after_check = step(r.target, Distribution::dirac(r.target.initial()), w.word.front());
  w.s_star_mass = after_check[r.s_star];
  w.witness_prob = accept_prob(r.target, w.word);
  w.honest_prob = accept_prob(r.target, w.honest);
  return w;
}

}  // namespace pfa
