#include <doctest.h>

#include "pfa/analysis.hpp"
#include "pfa/core.hpp"
#include "pfa/thirds.hpp"
#include "test_support.hpp"

using namespace pfa;
using namespace pfa::testing;

namespace {

Rational half_resolved(std::size_t rounds) { return Rational(1, 2) * (1 - pow(Rational(5, 9), rounds)); }

// Hand-written 3x3 round matrix on (g, h0, h1) plus the two exits, iterated densely.
std::pair<Rational, Rational> round_oracle(std::size_t sharps) {
  Rational g = 1, h0 = 0, h1 = 0, r0 = 0, r1 = 0;
  for (std::size_t i = 0; i < sharps; ++i) {
    Rational ng = h0 / 3 + h1 * 2 / 3;
    Rational nh0 = g / 3;
    Rational nh1 = g * 2 / 3;
    r0 += h0 * 2 / 3;
    r1 += h1 / 3;
    g = ng;
    h0 = nh0;
    h1 = nh1;
  }
  return {r0, r1};
}

}  // namespace

TEST_SUITE("thirds") {
  TEST_CASE("gadget shape") {
    auto r = build_thirds(single_coin());
    REQUIRE(r.coins.size() == 1);
    const auto& c = r.coins[0];
    CHECK(r.target.state_name(c.entry) == "g[q0,a]");
    CHECK(r.target.state_name(c.low) == "h0[q0,a]");
    CHECK(r.target.state_name(c.high) == "h1[q0,a]");
    CHECK(r.target.letter_name(r.sharp) == "sharp");
    CHECK(r.sharp.index == r.source.num_letters());
    CHECK(r.lost.has_value());
    CHECK(is_thirds(r.target));
    CHECK(validate(r.target).empty());
    CHECK(step(r.target, Distribution::dirac(StateId{0}), LetterId{0}) == Distribution::dirac(c.entry));
  }

  TEST_CASE("deterministic sources are copied without gadgets") {
    auto r = build_thirds(parity_automaton());
    CHECK(r.coins.empty());
    CHECK_FALSE(r.lost.has_value());
    CHECK(r.target.num_states() == 2);
    for (const auto& w : all_words(2, 3)) CHECK(accept_prob(r.target, r.encode(w, 4)) == accept_prob(r.source, w));
  }

  TEST_CASE("each two-sharp round resolves 4/9 of the remaining mass") {
    auto r = build_thirds(single_coin());
    const auto& c = r.coins[0];
    for (std::size_t p = 0; p <= 6; ++p) {
      auto d = run(r.target, Distribution::dirac(StateId{0}), r.encode(r.source.word("a"), 2 * p));
      auto [o0, o1] = round_oracle(2 * p);
      CHECK(d[c.r0] == o0);
      CHECK(d[c.r1] == o1);
      CHECK(d[c.r0] == half_resolved(p));
      CHECK(d[c.r1] == half_resolved(p));
      CHECK(d[c.entry] == pow(Rational(5, 9), p));
    }
    CHECK(half_resolved(1) == Rational(2, 9));
    CHECK(half_resolved(2) == Rational(28, 81));
  }

  TEST_CASE("encode") {
    auto r = build_thirds(coin_automaton());
    CHECK(r.encode({}, 3).empty());
    CHECK(r.target.format_word(r.encode(r.source.word("a.b"), 2)) == "a.sharp.sharp.b.sharp.sharp");
    CHECK(r.encode(r.source.word("a"), 0) == r.source.word("a"));
    CHECK(encode_thirds(r, r.source.word("b"), 1) == r.encode(r.source.word("b"), 1));
  }

  TEST_CASE("two sequential coins multiply") {
    Pfa p({"q0", "q1", "q2", "x"}, {"a", "b"}, StateId{0}, {StateId{2}});
    p.set_row(LetterId{0}, StateId{0}, {{StateId{1}, Rational(1, 2)}, {StateId{3}, Rational(1, 2)}});
    p.set_row(LetterId{1}, StateId{1}, {{StateId{2}, Rational(1, 2)}, {StateId{3}, Rational(1, 2)}});
    auto r = build_thirds(p);
    CHECK(r.coins.size() == 2);
    auto w = p.word("a.b");
    CHECK(accept_prob(p, w) == Rational(1, 4));
    for (std::size_t k = 0; k <= 4; ++k) {
      auto one = half_resolved(k);
      CHECK(accept_prob(r.target, r.encode(w, 2 * k)) == one * one);
    }
  }

  TEST_CASE("verify_thirds on the coin automaton") {
    auto r = build_thirds(coin_automaton());
    auto rep = verify_thirds(r, r.source.word("a.a"), 5);
    CHECK(rep.ok);
    CHECK(rep.source_prob == Rational(3, 4));
    REQUIRE(rep.f.size() == 6);
    CHECK(rep.f[0] == 0);
    CHECK(rep.monotone);
    CHECK(rep.bounded);
    CHECK(rep.lower_bound);
    CHECK(rep.residual == Rational(3, 4) - rep.f[5]);
    CHECK(rep.residual > 0);
    // x = (1 - (5/9)^5) / 2 per coin; the second coin only sees the resolved x on q0
    CHECK(rep.residual == Rational(728346875L, 13947137604L));
  }

  TEST_CASE("a thread caught mid-gadget is lost, never miscounted") {
    // after the coin, b moves q1 to q2; an unresolved thread would otherwise land in F late
    Pfa p({"q0", "q1", "q2"}, {"a", "b"}, StateId{0}, {StateId{1}});
    p.set_row(LetterId{0}, StateId{0}, {{StateId{0}, Rational(1, 2)}, {StateId{1}, Rational(1, 2)}});
    p.set_row(LetterId{1}, StateId{1}, dirac_row(StateId{2}));
    auto r = build_thirds(p);
    auto w = p.word("a.b");
    CHECK(accept_prob(p, w) == 0);
    for (std::size_t k = 0; k <= 4; ++k) CHECK(accept_prob(r.target, r.encode(w, 2 * k)) == 0);
    auto d = run(r.target, Distribution::dirac(StateId{0}), r.encode(w, 2));
    CHECK(d[*r.lost] == Rational(5, 9));
  }

  TEST_CASE("property: bounds hold on random simple sources") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      auto src = random_simple_pfa(1 + seed % 4, 1 + seed % 2, seed);
      auto r = build_thirds(src);
      CHECK(is_thirds(r.target));
      CHECK(r.coins.size() == prob_transitions(src).size());
      for (const auto& w : all_words(src.num_letters(), 3)) {
        auto rep = verify_thirds(r, w, 3);
        CHECK(rep.ok);
      }
    }
  }

  TEST_CASE("rejects non-simple input") {
    CHECK_THROWS_AS(build_thirds(random_thirds_pfa(3, 2, 4)), ReductionError);
  }
}
