#include "pfa/analysis.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <set>

#include "pfa/core.hpp"
#include "pfa/one_coin.hpp"
#include "pfa/thirds.hpp"
#include "pfa/value.hpp"

namespace pfa {

namespace {

using Visitor = std::function<void(const Word&, const Rational&)>;

// Breadth-first, shortlex-ordered exploration. Each distinct (checker state,
// distribution) is expanded once, from the first word that reaches it.
std::size_t explore(const Pfa& p, std::size_t max_len, const SyntacticDfa* dfa, const Visitor& visit) {
  struct Node {
    Word word;
    Distribution dist;
    std::uint32_t dfa_state;
  };
  if (dfa && dfa->alphabet_size() != p.num_letters())
    throw AlphabetError("restricting automaton is over a different alphabet");

  std::set<std::pair<std::uint32_t, Distribution>> seen;
  std::vector<Node> frontier{{Word{}, Distribution::dirac(p.initial()), dfa ? dfa->start() : 0u}};
  seen.insert({frontier[0].dfa_state, frontier[0].dist});
  std::size_t explored = 0;

  auto evaluate = [&](const Node& node) {
    ++explored;
    if (!dfa || dfa->is_accepting(node.dfa_state)) visit(node.word, accepting_mass(p, node.dist));
  };
  evaluate(frontier[0]);

  for (std::size_t len = 1; len <= max_len && !frontier.empty(); ++len) {
    std::vector<Node> next;
    for (const auto& node : frontier)
      for (std::uint32_t a = 0; a < p.num_letters(); ++a) {
        const LetterId letter{a};
        std::uint32_t q = 0;
        if (dfa) {
          q = dfa->next(node.dfa_state, letter);
          if (q == dfa->dead()) continue;
        }
        Distribution d = step(p, node.dist, letter);
        if (!seen.insert({q, d}).second) continue;
        Word w = node.word;
        w.push_back(letter);
        next.push_back({std::move(w), std::move(d), q});
        evaluate(next.back());
      }
    frontier = std::move(next);
  }
  return explored;
}

}  // namespace

ValueEstimate estimate_value(const Pfa& p, std::size_t max_len, const SyntacticDfa* restrict_to) {
  ValueEstimate est;
  est.length_bound = max_len;
  bool found = false;
  est.words_explored = explore(p, max_len, restrict_to, [&](const Word& w, const Rational& prob) {
    if (!found || prob > est.best_prob) {
      found = true;
      est.best_prob = prob;
      est.best_word = w;
    }
  });
  return est;
}

ValueEstimate estimate_value_brute_force(const Pfa& p, std::size_t max_len) {
  ValueEstimate est;
  est.length_bound = max_len;
  bool found = false;
  for (const auto& w : all_words(p.num_letters(), max_len)) {
    ++est.words_explored;
    auto prob = accept_prob(p, w);
    if (!found || prob > est.best_prob) {
      found = true;
      est.best_prob = prob;
      est.best_word = w;
    }
  }
  return est;
}

IsolationReport isolation_probe(const Pfa& p, const Rational& lambda, std::size_t max_len) {
  if (lambda < 0 || lambda > 1) throw Error("lambda " + to_string(lambda) + " is outside [0,1]");
  IsolationReport rep;
  rep.lambda = lambda;
  rep.length_bound = max_len;
  bool found = false;
  rep.words_explored = explore(p, max_len, nullptr, [&](const Word& w, const Rational& prob) {
    Rational gap = abs(prob - lambda);
    if (!found || gap < rep.min_gap) {
      found = true;
      rep.min_gap = gap;
      rep.witness = w;
    }
  });
  return rep;
}

namespace {

std::string letter_label(std::size_t i) {
  if (i < 26) return std::string(1, static_cast<char>('a' + i));
  return "l" + std::to_string(i);
}

Pfa random_pfa(std::size_t states, std::size_t letters, std::uint64_t seed, const Rational& low_prob) {
  if (states == 0 || letters == 0) throw Error("random automaton needs at least one state and one letter");
  // mt19937_64 output is fully specified, so reducing it by hand keeps instances
  // identical across standard libraries.
  std::mt19937_64 rng(seed);
  auto below = [&](std::size_t n) { return static_cast<std::uint32_t>(rng() % n); };

  std::vector<std::string> state_names, letter_names;
  for (std::size_t i = 0; i < states; ++i) state_names.push_back("q" + std::to_string(i));
  for (std::size_t i = 0; i < letters; ++i) letter_names.push_back(letter_label(i));
  std::vector<StateId> accepting;
  for (std::uint32_t i = 0; i < states; ++i)
    if (rng() % 2) accepting.push_back(StateId{i});

  Pfa p(state_names, letter_names, StateId{0}, accepting);
  const Rational high_prob = 1 - low_prob;
  auto coin_row = [&]() -> Row {
    auto x = below(states);
    auto y = below(states - 1);
    if (y >= x) ++y;
    return {{StateId{x}, low_prob}, {StateId{y}, high_prob}};
  };
  bool any_coin = false;
  for (std::uint32_t a = 0; a < letters; ++a)
    for (std::uint32_t q = 0; q < states; ++q) {
      if (states > 1 && rng() % 2) {
        p.set_row(LetterId{a}, StateId{q}, coin_row());
        any_coin = true;
      } else {
        p.set_row(LetterId{a}, StateId{q}, dirac_row(StateId{below(states)}));
      }
    }
  if (states > 1 && !any_coin) p.set_row(LetterId{below(letters)}, StateId{below(states)}, coin_row());
  return p;
}

}  // namespace

Pfa random_simple_pfa(std::size_t states, std::size_t letters, std::uint64_t seed) {
  return random_pfa(states, letters, seed, Rational(1, 2));
}

Pfa random_thirds_pfa(std::size_t states, std::size_t letters, std::uint64_t seed) {
  return random_pfa(states, letters, seed, Rational(1, 3));
}

std::size_t SweepReport::passed() const {
  return static_cast<std::size_t>(
      std::count_if(trials.begin(), trials.end(), [](const SweepTrial& t) { return t.failure.empty(); }));
}

namespace {

// Redirects the s0 branch of apply[a0, q0] to a different barred copy.
void corrupt(OneCoinReduction& r) {
  const auto q0 = r.source.initial().index;
  const auto& row = r.target.row(r.apply[0][q0], r.s0);
  const auto n = r.barred.size();
  std::size_t current = 0;
  for (std::size_t q = 0; q < n; ++q)
    if (row[0].target == r.barred[q]) current = q;
  r.target.set_row(r.apply[0][q0], r.s0, dirac_row(n > 1 ? r.barred[(current + 1) % n] : r.s1));
}

}  // namespace

SweepReport equivalence_sweep(const SweepConfig& cfg) {
  SweepReport report;
  std::mt19937_64 rng(cfg.seed);
  for (std::size_t i = 0; i < cfg.trials; ++i) {
    SweepTrial t;
    t.index = i;
    t.states = 1 + rng() % std::max<std::size_t>(cfg.max_states, 1);
    t.letters = 1 + rng() % std::max<std::size_t>(cfg.max_letters, 1);
    const auto instance_seed = rng();
    const Pfa source = random_simple_pfa(t.states, t.letters, instance_seed);
    auto fail = [&](const std::string& what) {
      if (t.failure.empty()) t.failure = what;
    };

    auto one = build_one_coin(source);
    if (cfg.mutate_trial && *cfg.mutate_trial == i) corrupt(one);
    auto one_rep = verify_one_coin(one, cfg.max_len);
    t.one_coin = one_rep.verified && prob_transitions(one.target).size() == 1 && is_simple(one.target);
    if (!one_rep.verified)
      fail("one-coin counterexample w=" + source.format_word(*one_rep.counterexample) + " source=" +
           to_string(one_rep.source_prob) + " target=" + to_string(one_rep.target_prob));
    else if (!t.one_coin)
      fail("one-coin target is not simple with a single probabilistic transition");

    auto thirds = build_thirds(source);
    t.thirds = is_thirds(thirds.target);
    for (const auto& w : all_words(source.num_letters(), cfg.max_len)) {
      auto rep = verify_thirds(thirds, w, cfg.p_max);
      if (!rep.ok) {
        t.thirds = false;
        fail("thirds sweep fails at w=" + source.format_word(w));
        break;
      }
    }

    auto value = build_value_preserving(thirds.target);
    t.value = prob_transitions(value.target).size() == 1 && is_simple(value.target);
    for (const auto& w : all_words(thirds.target.num_letters(), cfg.value_max_len)) {
      auto rep = verify_value_preserving(value, w, cfg.p_max);
      if (!rep.ok) {
        t.value = false;
        fail("value recycling fails at w=" + thirds.target.format_word(w));
        break;
      }
    }
    if (!t.value) fail("value-preserving target check failed");
    if (!t.thirds) fail("thirds target check failed");
    report.trials.push_back(std::move(t));
  }
  return report;
}

}  // namespace pfa
