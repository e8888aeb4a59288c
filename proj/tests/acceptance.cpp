// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "pfa/analysis.hpp"
#include "pfa/core.hpp"
#include "pfa/io.hpp"
#include "pfa/one_coin.hpp"
#include "pfa/thirds.hpp"
#include "pfa/thread_tree.hpp"
#include "pfa/value.hpp"
#include "test_support.hpp"

using namespace pfa;
using namespace pfa::testing;

namespace {

/// Collects the first failure of a criterion; later ones are counted but not kept.
class Outcome {
 public:
  void require(bool cond, const std::string& what) {
    if (cond) return;
    if (failures_++ == 0) first_ = what;
  }
  void note(const std::string& detail) { detail_ = detail; }
  bool ok() const { return failures_ == 0; }
  std::string summary() const {
    if (ok()) return detail_;
    return std::to_string(failures_) + " failure(s), first: " + first_;
  }

 private:
  std::size_t failures_ = 0;
  std::string first_, detail_;
};

std::string fmt(const Pfa& p, const Word& w) { return w.empty() ? "<empty>" : p.format_word(w); }

/// Random source shapes shared by several criteria: 1..4 states, 1..2 letters.
Pfa random_simple(std::uint64_t i) { return random_simple_pfa(1 + i % 4, 1 + (i / 4) % 2, 1000 + i); }
Pfa random_thirds(std::uint64_t i) { return random_thirds_pfa(1 + i % 4, 1 + (i / 4) % 2, 2000 + i); }

void criterion_1(Outcome& o) {
  std::size_t words = 0;
  for (std::uint64_t i = 0; i < 50; ++i) {
    auto r = build_one_coin(random_simple(i));
    auto rep = verify_one_coin(r, 4);
    words += rep.words_checked;
    o.require(rep.verified, "instance " + std::to_string(i) + " differs on " +
                                (rep.counterexample ? fmt(r.source, *rep.counterexample) : "?"));
    o.require(prob_transitions(r.target).size() == 1, "instance " + std::to_string(i) + " has != 1 coin");
    o.require(is_simple(r.target), "instance " + std::to_string(i) + " target not simple");
  }
  o.note("50 instances, " + std::to_string(words) + " words, exact equality");
}

void criterion_2(Outcome& o) {
  auto r = build_thirds(single_coin());
  const auto& c = r.coins.at(0);
  const auto a = r.source.word("a");
  for (std::size_t p = 0; p <= 20; ++p) {
    // geometric series over rounds: 2/9 resolves to r0 each round, 5/9 stays on g
    Rational series = 0;
    for (std::size_t i = 0; i < p; ++i) series += Rational(2, 9) * pow(Rational(5, 9), static_cast<unsigned>(i));
    const Rational closed = Rational(1, 2) * (1 - pow(Rational(5, 9), static_cast<unsigned>(p)));
    auto dense_mass = dense_run(r.target, to_dense(Distribution::dirac(StateId{0}), r.target.num_states()),
                                r.encode(a, 2 * p))[c.r0.index];
    o.require(series == closed && dense_mass == closed, "round law fails at p=" + std::to_string(p));
  }
  std::size_t checked = 0;
  for (std::uint64_t i = 0; i < 20; ++i) {
    auto t = build_thirds(random_simple(i));
    for (const auto& w : all_words(t.source.num_letters(), 3)) {
      auto rep = verify_thirds(t, w, 10);
      ++checked;
      o.require(rep.monotone && rep.bounded, "instance " + std::to_string(i) + " word " + fmt(t.source, w));
    }
  }
  o.note("p=0..20 exact; " + std::to_string(checked) + " words monotone and bounded for p<=10");
}

void criterion_3(Outcome& o) {
  std::mt19937_64 rng(33);
  std::size_t checks = 0;
  for (std::uint64_t i = 0; i < 20; ++i) {
    auto r = build_value_preserving(random_thirds(i));
    for (std::uint32_t a = 0; a < r.source.num_letters(); ++a)
      for (int k = 0; k < 10; ++k) {
        auto delta = random_distribution(r.source.num_states(), rng);
        auto got = run(r.target, r.lift(delta), r.encode(Word{LetterId{a}}));
        auto want = r.lift(step(r.source, delta, LetterId{a})).scaled(Rational(3, 4)) +
                    Distribution::dirac(r.wait).scaled(Rational(1, 4));
        o.require(got == want, "instance " + std::to_string(i) + " letter " + r.source.letter_name(LetterId{a}));
        ++checks;
      }
  }
  o.note(std::to_string(checks) + " (instance, letter, distribution) triples");
}

void criterion_4(Outcome& o) {
  std::size_t checked = 0;
  for (std::uint64_t i = 0; i < 20; ++i) {
    auto r = build_value_preserving(random_thirds(i));
    for (const auto& w : all_words(r.source.num_letters(), 3)) {
      auto rep = verify_value_preserving(r, w, 10);
      ++checked;
      o.require(rep.closed_form, "closed form, instance " + std::to_string(i) + " word " + fmt(r.source, w));
      o.require(rep.monotone && rep.bounded, "monotone/bounded, instance " + std::to_string(i));
    }
  }
  o.note(std::to_string(checked) + " words, p=1..10");
}

void criterion_5(Outcome& o) {
  Rational overall = 0;
  std::size_t blocks = 0, exempt = 0;
  for (std::uint64_t i = 0; i < 20; ++i) {
    auto r = build_value_preserving(random_thirds(i));
    auto rep = key_observation_check(r, 3, 100, 500 + i);
    blocks += rep.image_blocks + rep.perturbations;
    exempt += rep.exempt;
    o.require(rep.ok, "instance " + std::to_string(i) + " violates on " +
                          (rep.violation ? r.target.format_word(*rep.violation) : "?"));
    o.require(rep.max_prob <= Rational(3, 4), "instance " + std::to_string(i) + " exceeds 3/4");
    if (rep.max_prob > overall) overall = rep.max_prob;
  }
  // attainment: one deterministic step into F, so k = 1 and Pr(w) = 1
  Pfa step_in({"q0", "q1"}, {"a"}, StateId{0}, {StateId{1}});
  step_in.set_row(LetterId{0}, StateId{0}, dirac_row(StateId{1}));
  auto r = build_value_preserving(step_in);
  auto rep = key_observation_check(r, 3, 100, 7);
  o.require(rep.ok, "attainment instance violates");
  o.require(rep.max_prob == Rational(3, 4) && rep.argmax == r.encode(r.source.word("a")),
            "3/4 not attained at k=1");
  o.note(std::to_string(blocks) + " blocks, max " + to_string(overall) + "; attained 3/4 at k=1; " +
         std::to_string(exempt) + " perturbations never touch the initial thread and keep Pr = [q0 in F]");
}

void criterion_6(Outcome& o) {
  std::size_t witnesses = 0;
  for (std::uint64_t i = 0; i < 50; ++i) {
    auto src = random_simple(i);
    if (src.num_states() < 2 || prob_transitions(src).empty()) continue;
    auto r = build_one_coin(src);
    auto w = image_escape_witness(r);
    o.require(w.has_value(), "no witness for instance " + std::to_string(i));
    if (!w) continue;
    ++witnesses;
    o.require(!image_dfa(r).accepts(w->word), "witness accepted by image DFA, instance " + std::to_string(i));
    o.require(w->s_star_mass > 0, "no mass through s_star, instance " + std::to_string(i));
    o.require(w->witness_prob == accept_prob(r.target, w->word), "witness probability mismatch");
  }
  o.note(std::to_string(witnesses) + " witnesses");
}

void criterion_7(Outcome& o) {
  for (std::uint64_t i = 0; i < 20; ++i) {
    Pfa p = i % 2 ? random_simple(i) : random_thirds(i);
    auto fast = estimate_value(p, 5);
    auto slow = estimate_value_brute_force(p, 5);
    o.require(fast.best_prob == slow.best_prob && fast.best_word == slow.best_word,
              "instance " + std::to_string(i) + " disagrees");
  }
  Pfa coin = parse(R"(pfa
states: q0 q1
alphabet: a b
initial: q0
accepting: q1
trans a q0 -> 1/2 q0, 1/2 q1
)");
  for (std::size_t len = 0; len <= 10; ++len)
    o.require(estimate_value(coin, len).best_prob == 1 - pow(Rational(1, 2), static_cast<unsigned>(len)),
              "coin estimate wrong at max_len " + std::to_string(len));
  o.note("20 instances at max_len 5; coin 1 - 2^-L for L=0..10");
}

std::string run_tool(const std::string& args) {
  const std::string cmd = std::string(PFATOOL_PATH) + " " + args + " 2>&1";
  std::string out;
  if (FILE* f = popen(cmd.c_str(), "r")) {
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, f)) > 0) out.append(buf, n);
    pclose(f);
  }
  return out;
}

void criterion_8(Outcome& o) {
  std::vector<Pfa> corpus{coin_automaton(), single_coin(), parity_automaton(), split_and_join()};
  for (std::uint64_t i = 0; i < 10; ++i) {
    auto src = random_simple(i);
    corpus.push_back(src);
    corpus.push_back(build_one_coin(src).target);
    auto thirds = build_thirds(src).target;
    corpus.push_back(thirds);
    corpus.push_back(build_value_preserving(thirds).target);
    corpus.push_back(random_thirds(i));
  }
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto text = serialize(corpus[i]);
    o.require(parse(text) == corpus[i] && serialize(parse(text)) == text, "round-trip fails on corpus item " +
                                                                              std::to_string(i));
  }

  const auto path = (std::filesystem::temp_directory_path() / "pfakit_acceptance_coin.pfa").string();
  std::ofstream(path) << serialize(coin_automaton());
  const std::vector<std::string> commands{
      "accept " + path + " --word a.a",
      "--format kv value " + path + " --max-len 4",
      "reduce " + path + " --mode one-coin",
      "reduce " + path + " --mode value",
      "encode " + path + " --mode thirds --word a.b",
      "verify " + path + " --mode one-coin --max-len 4",
      "dot " + path + " --word a.a",
      "--format kv sweep --trials 5 --states 3 --letters 2 --max-len 3 --seed 9",
  };
  for (const auto& c : commands) {
    auto first = run_tool(c), second = run_tool(c);
    o.require(!first.empty() && first == second, "non-deterministic output: " + c);
  }
  o.note(std::to_string(corpus.size()) + " automata round-tripped; " + std::to_string(commands.size()) +
         " CLI commands byte-identical across runs");
}

void criterion_9(Outcome& o) {
  Pfa p = split_and_join();
  auto tree = build_thread_tree(p, p.word("x.x.c.y.m"));
  using Node = std::pair<std::size_t, StateId>;
  o.require(tree.branch_nodes() == std::vector<Node>{{2, p.state("q2")}}, "branch not at the coin step");
  o.require(tree.merge_nodes() == std::vector<Node>{{5, p.state("z")}}, "merge not at resynchronisation");
  auto dot = render_dot(p, tree);
  o.require(dot.find("\"s_q2_2\" [label=\"q2\", style=filled") != std::string::npos, "DOT lacks the branch node");
  o.require(dot.find("\"s_z_5\" [label=\"z\", peripheries=2]") != std::string::npos, "DOT lacks the merge node");

  std::mt19937_64 rng(99);
  std::size_t trees = 0;
  for (std::uint64_t i = 0; i < 20; ++i) {
    auto src = random_simple(i);
    const auto n = src.num_states();
    for (int k = 0; k < 5; ++k) {
      auto w = random_word(src.num_letters(), 6, rng);
      auto t = build_thread_tree(src, w);
      for (const auto& level : t.levels) o.require(level.size() <= n, "source level exceeds n");
      // in the one-coin target, at most n threads sit on original states at any depth
      auto r = build_one_coin(src);
      auto tt = build_thread_tree(r.target, r.encode(w));
      for (const auto& level : tt.levels) {
        std::size_t on_orig = 0;
        for (auto s : level)
          if (s.index < n) ++on_orig;
        o.require(on_orig <= n, "target level exceeds n original threads");
      }
      ++trees;
    }
  }
  o.note("branch at step 3, merge at step 5; " + std::to_string(trees) + " random words up to length 6");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"one-coin equivalence", criterion_1},  {"thirds gadget law", criterion_2},
      {"per-letter 3/4 scaling", criterion_3}, {"geometric recycling", criterion_4},
      {"single-block 3/4 cap", criterion_5},   {"image-escape witness", criterion_6},
      {"value estimator oracle", criterion_7}, {"round-trip and determinism", criterion_8},
      {"thread-tree invariant", criterion_9},
  };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    all = all && o.ok();
    std::cout << (o.ok() ? "PASS" : "FAIL") << " " << i + 1 << " " << criteria[i].first << ": " << o.summary()
              << std::endl;
  }
  return all ? 0 : 1;
}
