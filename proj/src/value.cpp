#include "pfa/value.hpp"

#include <algorithm>
#include <random>

#include "pfa/core.hpp"
#include "pfa/thirds.hpp"

namespace pfa {

std::pair<StateId, StateId> thirds_successors(const Pfa& p, LetterId a, StateId q) {
  const Row& row = p.row(a, q);
  const Rational third(1, 3), two_thirds(2, 3);
  if (row.size() == 1 && row[0].prob == 1) return {row[0].target, row[0].target};
  if (row.size() == 2) {
    if (row[0].prob == third && row[1].prob == two_thirds) return {row[0].target, row[1].target};
    if (row[0].prob == two_thirds && row[1].prob == third) return {row[1].target, row[0].target};
  }
  std::string entries;
  for (const auto& e : row) entries += " " + to_string(e.prob) + " " + p.state_name(e.target);
  throw ReductionError("row (" + p.letter_name(a) + ", " + p.state_name(q) + ") is not a 1/3-2/3 split:" + entries);
}

Pfa thirds_normal_form(const Pfa& p) {
  if (is_thirds(p)) return p;
  return build_thirds(p).target;
}

Word ValueReduction::encode_blocks(const Word& w, std::size_t repeat) const {
  Word block = encode(w);
  block.push_back(finish);
  Word out;
  out.reserve(block.size() * repeat);
  for (std::size_t i = 0; i < repeat; ++i) out.insert(out.end(), block.begin(), block.end());
  return out;
}

Distribution ValueReduction::lift(const Distribution& source_dist) const {
  Row row;
  for (const auto& e : source_dist.entries()) {
    if (e.target.index >= orig.size()) throw AlphabetError("distribution is not over the source states");
    row.push_back({orig[e.target.index], e.prob});
  }
  return Distribution(std::move(row));
}

ValueReduction build_value_preserving(const Pfa& source, const Rational& lambda) {
  if (lambda != 1)
    throw UnsupportedLambda("general-lambda gadget is not specified; only lambda = 1 is supported (got " +
                            to_string(lambda) + ")");
  if (auto v = validate(source); !v.empty()) throw ReductionError("source automaton is invalid: " + v.front().message);
  if (!is_thirds(source)) throw ReductionError("source automaton is not in thirds form; normalise it first");

  const auto n = source.num_states();
  const auto m = source.num_letters();
  ValueReduction r;
  r.source = source;

  TargetNames names;
  using K = GadgetState::Kind;
  for (const auto& q : source.state_names()) r.orig.push_back(names.add_state(GadgetState{K::Orig, q, {}}.name()));
  for (const auto& q : source.state_names()) r.barred.push_back(names.add_state(GadgetState{K::Barred, q, {}}.name()));
  r.s_star = names.add_state(GadgetState{K::SStar, {}, {}}.name());
  r.s0 = names.add_state(GadgetState{K::S0, {}, {}}.name());
  r.s1 = names.add_state(GadgetState{K::S1, {}, {}}.name());
  r.wait = names.add_state(GadgetState{K::Wait, {}, {}}.name());

  r.star = names.add_letter(GadgetLetter::star().name());
  r.merge = names.add_letter(GadgetLetter::merge().name());
  r.finish = names.add_letter(GadgetLetter::finish().name());
  r.check.assign(m, {});
  r.apply.assign(m, {});
  for (std::uint32_t a = 0; a < m; ++a)
    for (std::uint32_t q = 0; q < n; ++q) {
      const auto& an = source.letter_names()[a];
      const auto& qn = source.state_names()[q];
      r.check[a].push_back(names.add_letter(GadgetLetter::check(an, qn).name()));
      r.apply[a].push_back(names.add_letter(GadgetLetter::apply(an, qn).name()));
    }

  std::vector<Word> images(m);
  for (std::uint32_t a = 0; a < m; ++a) {
    for (std::uint32_t q = 0; q < n; ++q)
      images[a].insert(images[a].end(), {r.check[a][q], r.star, r.star, r.apply[a][q]});
    images[a].push_back(r.merge);
  }
  r.morphism = Morphism(std::move(images));

  const auto alphabet_size = 3 + 2 * n * m;
  r.checker = SyntacticDfa::build(alphabet_size, r.morphism, r.finish);
  for (std::uint32_t c = 0; c + 1 < r.checker.num_states(); ++c)
    r.cstates.push_back(names.add_state(GadgetState{K::CState, {}, {}, c}.name()));
  r.bottom = names.add_state(GadgetState{K::Bottom, {}, {}}.name());
  r.cstates.push_back(r.bottom);

  r.target = Pfa(names.take_states(), names.take_letters(), r.orig[source.initial().index], {r.cstates[0]});
  Pfa& t = r.target;
  const auto letters = t.num_letters();

  // s_star: star flips the coin, anything else abandons the simulation.
  for (std::uint32_t b = 0; b < letters; ++b) t.set_row(LetterId{b}, r.s_star, dirac_row(r.wait));
  t.set_row(r.star, r.s_star, {{r.s_star, Rational(1, 2)}, {r.s0, Rational(1, 2)}});
  t.set_row(r.star, r.s0, dirac_row(r.s1));
  // A third star would let s_star keep leaking into s0/s1; s1 gives up instead.
  t.set_row(r.star, r.s1, dirac_row(r.wait));

  for (std::uint32_t a = 0; a < m; ++a)
    for (std::uint32_t q = 0; q < n; ++q) {
      auto [lo, hi] = thirds_successors(source, LetterId{a}, StateId{q});
      t.set_row(r.check[a][q], r.orig[q], dirac_row(r.s_star));
      t.set_row(r.apply[a][q], r.s0, dirac_row(r.barred[lo.index]));
      t.set_row(r.apply[a][q], r.s1, dirac_row(r.barred[hi.index]));
    }
  for (std::uint32_t q = 0; q < n; ++q) t.set_row(r.merge, r.barred[q], dirac_row(r.orig[q]));

  // finish: restart waiting threads, hand accepted threads to the checker, kill the rest.
  for (std::uint32_t q = 0; q < n; ++q) {
    t.set_row(r.finish, r.orig[q], dirac_row(source.is_accepting(StateId{q}) ? r.cstates[0] : r.bottom));
    t.set_row(r.finish, r.barred[q], dirac_row(r.bottom));
  }
  t.set_row(r.finish, r.s0, dirac_row(r.bottom));
  t.set_row(r.finish, r.s1, dirac_row(r.bottom));
  t.set_row(r.finish, r.wait, dirac_row(r.orig[source.initial().index]));

  for (std::uint32_t c = 0; c < r.checker.num_states(); ++c)
    for (std::uint32_t b = 0; b < letters; ++b)
      t.set_row(LetterId{b}, r.cstates[c], dirac_row(r.cstates[r.checker.next(c, LetterId{b})]));
  return r;
}

SyntacticDfa build_syntactic_dfa(const ValueReduction& r) {
  return SyntacticDfa::build(r.target.num_letters(), r.morphism, r.finish);
}

Blocks block_decompose(const Word& w, LetterId finish) {
  Blocks out;
  Word cur;
  std::size_t start = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] == finish) {
      out.blocks.push_back(std::move(cur));
      out.offsets.push_back(start);
      cur.clear();
      start = i + 1;
    } else {
      cur.push_back(w[i]);
    }
  }
  out.has_remainder = !cur.empty();
  out.remainder = std::move(cur);
  return out;
}

ValueReport verify_value_preserving(const ValueReduction& r, const Word& w, std::size_t p_max) {
  ValueReport rep;
  rep.source_prob = accept_prob(r.source, w);
  rep.k = w.size();
  const Word block = r.encode_blocks(w, 1);
  const Rational survive = pow(Rational(3, 4), static_cast<unsigned>(rep.k));

  Distribution d = Distribution::dirac(r.target.initial());
  rep.closed_form = rep.monotone = rep.bounded = true;
  for (std::size_t p = 1; p <= p_max; ++p) {
    d = run(r.target, d, block);
    rep.actual.push_back(accepting_mass(r.target, d));
    rep.expected.push_back(rep.source_prob * (1 - pow(1 - survive, static_cast<unsigned>(p))));
    if (rep.actual.back() != rep.expected.back()) rep.closed_form = false;
    if (rep.actual.back() > rep.source_prob) rep.bounded = false;
    if (p > 1 && rep.actual[p - 1] < rep.actual[p - 2]) rep.monotone = false;
  }
  rep.residual = rep.actual.empty() ? rep.source_prob : rep.source_prob - rep.actual.back();
  rep.ok = rep.closed_form && rep.monotone && rep.bounded;
  return rep;
}

namespace {

bool checks_initial(const ValueReduction& r, const Word& u) {
  const auto q0 = r.source.initial().index;
  for (const auto& row : r.check)
    if (std::find(u.begin(), u.end(), row[q0]) != u.end()) return true;
  return false;
}

Word mutate(const ValueReduction& r, Word u, std::mt19937_64& rng) {
  const auto letters = static_cast<std::uint32_t>(r.target.num_letters());
  auto pick_letter = [&] {
    LetterId b;
    do b = LetterId{static_cast<std::uint32_t>(rng() % letters)};
    while (b == r.finish);
    return b;
  };
  const int edits = 1 + static_cast<int>(rng() % 3);
  for (int e = 0; e < edits; ++e) {
    const auto pos = u.empty() ? 0 : static_cast<std::size_t>(rng() % (u.size() + 1));
    switch (rng() % 5) {
      case 0: u.insert(u.begin() + static_cast<std::ptrdiff_t>(pos), pick_letter()); break;
      case 1:
        if (pos < u.size()) u.erase(u.begin() + static_cast<std::ptrdiff_t>(pos));
        break;
      case 2:
        if (pos < u.size()) u[pos] = pick_letter();
        break;
      case 3:
        if (pos + 1 < u.size()) std::swap(u[pos], u[pos + 1]);
        break;
      default:
        // lengthen a star run
        u.insert(u.begin() + static_cast<std::ptrdiff_t>(pos), 1 + rng() % 4, r.star);
        break;
    }
  }
  return u;
}

}  // namespace

KeyObservationReport key_observation_check(const ValueReduction& r, std::size_t bound, std::size_t perturbations,
                                           std::uint64_t seed) {
  KeyObservationReport rep;
  rep.max_prob = -1;
  const Rational cap(3, 4);
  const Rational unmoved = r.source.is_accepting(r.source.initial()) ? 1 : 0;
  bool ok = true;

  auto examine = [&](const Word& u) {
    Word block = u;
    block.push_back(r.finish);
    const auto prob = accept_prob(r.target, block);
    if (checks_initial(r, u)) {
      if (prob > rep.max_prob) {
        rep.max_prob = prob;
        rep.argmax = u;
      }
      if (prob > cap && ok) {
        ok = false;
        rep.violation = u;
      }
    } else {
      ++rep.exempt;
      if (prob != unmoved && ok) {
        ok = false;
        rep.violation = u;
      }
    }
  };

  std::vector<Word> images;
  for (const auto& w : all_words(r.source.num_letters(), bound)) {
    if (w.empty()) continue;
    images.push_back(r.encode(w));
    examine(images.back());
    ++rep.image_blocks;
  }
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < perturbations && !images.empty(); ++i) {
    examine(mutate(r, images[rng() % images.size()], rng));
    ++rep.perturbations;
  }
  if (rep.max_prob < 0) rep.max_prob = 0;
  rep.ok = ok;
  return rep;
}

Recovery recover_source_word(const ValueReduction& r, const Word& w) {
  Recovery rec;
  const auto blocks = block_decompose(w, r.finish);
  for (const auto& b : blocks.blocks) rec.decoded.push_back(r.morphism.decode(b));

  Distribution d = Distribution::dirac(r.target.initial());
  for (std::size_t i = 0; i < blocks.blocks.size(); ++i) {
    Word with_finish = blocks.blocks[i];
    with_finish.push_back(r.finish);
    if (rec.first_live_block) {
      if (!rec.decoded[i]) {
        const auto dev = r.checker.first_deviation(with_finish);
        rec.deviation = blocks.offsets[i] + dev.value_or(0);
        rec.reason = "block " + std::to_string(i) + " is not an image block";
        return rec;
      }
      continue;
    }
    d = run(r.target, d, with_finish);
    Rational checker_mass = 0;
    for (std::size_t c = 0; c + 1 < r.cstates.size(); ++c) checker_mass += d[r.cstates[c]];
    if (checker_mass > 0) rec.first_live_block = i;
  }
  if (rec.first_live_block && blocks.has_remainder) {
    const std::size_t start = w.size() - blocks.remainder.size();
    rec.deviation = start + r.checker.first_deviation(blocks.remainder).value_or(blocks.remainder.size() - 1);
    rec.reason = "trailing block is not terminated by finish";
    return rec;
  }
  rec.ok = true;
  rec.reason = rec.first_live_block ? "every block after the first live block is an image block"
                                    : "no thread reached the syntactic checker";
  return rec;
}

}  // namespace pfa
