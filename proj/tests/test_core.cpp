#include <doctest.h>

#include "pfa/analysis.hpp"
#include "pfa/core.hpp"
#include "test_support.hpp"

using namespace pfa;
using namespace pfa::testing;

TEST_SUITE("core") {
  TEST_CASE("validate accepts well-formed automata") {
    CHECK(validate(coin_automaton()).empty());
    CHECK(validate(parity_automaton()).empty());
  }

  TEST_CASE("validate reports a row that does not sum to one") {
    Pfa p = coin_automaton();
    p.set_row(LetterId{0}, StateId{0}, {{StateId{0}, Rational(1, 2)}, {StateId{1}, Rational(1, 3)}});
    auto v = validate(p);
    REQUIRE(v.size() == 1);
    CHECK(v[0].letter == LetterId{0});
    CHECK(v[0].state == StateId{0});
    CHECK(v[0].message.find("row sum 5/6") != std::string::npos);
  }

  TEST_CASE("validate reports unknown accepting states") {
    Pfa p({"q0"}, {"a"}, StateId{0}, {StateId{3}});
    auto v = validate(p);
    REQUIRE(v.size() == 1);
    CHECK(v[0].state == StateId{3});
  }

  TEST_CASE("validate reports negative entries and bad targets") {
    Pfa p({"q0", "q1"}, {"a"}, StateId{0}, {});
    p.set_row(LetterId{0}, StateId{0}, {{StateId{0}, Rational(-1)}, {StateId{1}, Rational(2)}});
    p.set_row(LetterId{0}, StateId{1}, {{StateId{5}, Rational(1)}});
    auto v = validate(p);
    CHECK(v.size() == 3);
  }

  TEST_CASE("step reads one matrix row") {
    Pfa p = coin_automaton();
    auto d = step(p, Distribution::dirac(StateId{0}), p.letter("a"));
    CHECK(d[StateId{0}] == Rational(1, 2));
    CHECK(d[StateId{1}] == Rational(1, 2));
  }

  TEST_CASE("identity letter leaves the distribution unchanged") {
    Pfa p = coin_automaton();
    Distribution d({{StateId{0}, Rational(1, 3)}, {StateId{1}, Rational(2, 3)}});
    CHECK(step(p, d, p.letter("b")) == d);
  }

  TEST_CASE("deterministic letter merges mass") {
    Pfa p({"q0", "q1", "q2"}, {"m"}, StateId{0}, {});
    p.set_row(LetterId{0}, StateId{0}, dirac_row(StateId{2}));
    p.set_row(LetterId{0}, StateId{1}, dirac_row(StateId{2}));
    Distribution d({{StateId{0}, Rational(1, 2)}, {StateId{1}, Rational(1, 2)}});
    CHECK(step(p, d, LetterId{0}) == Distribution::dirac(StateId{2}));
  }

  TEST_CASE("step rejects letters outside the alphabet") {
    Pfa p = coin_automaton();
    CHECK_THROWS_AS(step(p, Distribution::dirac(StateId{0}), LetterId{7}), AlphabetError);
    CHECK_THROWS_AS(p.word("a.z"), AlphabetError);
  }

  TEST_CASE("run folds step") {
    Pfa p = coin_automaton();
    auto d0 = Distribution::dirac(StateId{0});
    CHECK(run(p, d0, {}) == d0);
    auto d = run(p, d0, p.word("a.a"));
    CHECK(d[StateId{0}] == Rational(1, 4));
    CHECK(d[StateId{1}] == Rational(3, 4));
    CHECK(run(p, d0, p.word("a.b")) == step(p, step(p, d0, p.letter("a")), p.letter("b")));
  }

  TEST_CASE("reach_prob") {
    Pfa p = coin_automaton();
    CHECK(reach_prob(p, StateId{0}, p.word("a"), {StateId{0}, StateId{1}}) == 1);
    CHECK(reach_prob(p, StateId{0}, p.word("a"), {}) == 0);
    CHECK(reach_prob(p, StateId{0}, p.word("a"), {StateId{1}}) == Rational(1, 2));
  }

  TEST_CASE("accept_prob") {
    Pfa p = coin_automaton();
    CHECK(accept_prob(p, {}) == 0);
    CHECK(accept_prob(parity_automaton(), {}) == 1);
    CHECK(accept_prob(p, p.word("a.a")) == Rational(3, 4));
    // brute-force two-step enumeration: paths q0q0q0, q0q0q1, q0q1q1 with weights 1/4, 1/4, 1/2
    Rational enumerated = Rational(1, 4) + Rational(1, 2);
    CHECK(accept_prob(p, p.word("a.a")) == enumerated);
  }

  TEST_CASE("prob_transitions and value classes") {
    CHECK(prob_transitions(parity_automaton()).empty());
    auto coins = prob_transitions(coin_automaton());
    REQUIRE(coins.size() == 1);
    CHECK(coins[0] == ProbTransition{StateId{0}, LetterId{0}});

    CHECK(is_simple(coin_automaton()));
    CHECK_FALSE(is_thirds(coin_automaton()));
    CHECK(is_simple(parity_automaton()));
    CHECK(is_thirds(parity_automaton()));
    CHECK(is_thirds(random_thirds_pfa(3, 2, 4)));
    CHECK_FALSE(is_simple(random_thirds_pfa(3, 2, 4)));
  }

  TEST_CASE("all_words is shortlex") {
    auto words = all_words(2, 2);
    REQUIRE(words.size() == 7);
    CHECK(words[0].empty());
    CHECK(words[1] == Word{LetterId{0}});
    CHECK(words[3] == Word{LetterId{0}, LetterId{0}});
    CHECK(words[6] == Word{LetterId{1}, LetterId{1}});
  }

  TEST_CASE("property: mass conservation, monoid action, linearity, dense agreement") {
    std::mt19937_64 rng(17);
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      Pfa p = seed % 2 ? random_simple_pfa(1 + seed % 5, 1 + seed % 3, seed) : random_thirds_pfa(1 + seed % 5, 2, seed);
      const auto n = p.num_states();
      auto d1 = random_distribution(n, rng);
      auto d2 = random_distribution(n, rng);
      auto u = random_word(p.num_letters(), 4, rng);
      auto v = random_word(p.num_letters(), 4, rng);
      Word uv = u;
      uv.insert(uv.end(), v.begin(), v.end());

      auto r = run(p, d1, uv);
      CHECK(r.total() == 1);
      CHECK(r == run(p, run(p, d1, u), v));
      CHECK(to_dense(r, n) == dense_run(p, to_dense(d1, n), uv));

      Rational alpha = Rational(static_cast<long>(rng() % 5)) / 4;
      auto mixed = d1.scaled(alpha) + d2.scaled(1 - alpha);
      CHECK(run(p, mixed, uv) == run(p, d1, uv).scaled(alpha) + run(p, d2, uv).scaled(1 - alpha));

      auto prob = accept_prob(p, uv);
      CHECK(prob >= 0);
      CHECK(prob <= 1);
    }
  }

  TEST_CASE("property: deterministic automata accept with probability 0 or 1") {
    Pfa p = parity_automaton();
    for (const auto& w : all_words(2, 5)) {
      auto prob = accept_prob(p, w);
      CHECK((prob == 0 || prob == 1));
    }
  }
}
