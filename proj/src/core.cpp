#include "pfa/core.hpp"

#include <algorithm>
#include <set>

namespace pfa {

std::vector<Violation> validate(const Pfa& p) {
  std::vector<Violation> out;
  const auto n = p.num_states();
  if (n == 0) out.push_back({"automaton has no states", {}, {}});
  if (p.initial().index >= n)
    out.push_back({"initial state #" + std::to_string(p.initial().index) + " is not a declared state", {}, {}});
  for (auto s : p.accepting())
    if (s.index >= n)
      out.push_back({"accepting state #" + std::to_string(s.index) + " is not a declared state", {}, s});

  std::set<std::string_view> seen;
  for (const auto& name : p.state_names())
    if (!seen.insert(name).second) out.push_back({"duplicate state name '" + name + "'", {}, {}});
  seen.clear();
  for (const auto& name : p.letter_names())
    if (!seen.insert(name).second) out.push_back({"duplicate letter name '" + name + "'", {}, {}});

  for (std::uint32_t ai = 0; ai < p.num_letters(); ++ai) {
    const LetterId a{ai};
    for (std::uint32_t si = 0; si < n; ++si) {
      const StateId s{si};
      const auto where = " (letter " + p.letter_name(a) + ", state " + p.state_name(s) + ")";
      Rational sum = 0;
      for (const auto& e : p.row(a, s)) {
        if (e.target.index >= n)
          out.push_back({"transition to undeclared state #" + std::to_string(e.target.index) + where, a, s});
        if (e.prob < 0 || e.prob > 1)
          out.push_back({"probability " + to_string(e.prob) + " outside [0,1]" + where, a, s});
        sum += e.prob;
      }
      if (sum != 1) out.push_back({"row sum " + to_string(sum) + " != 1" + where, a, s});
    }
  }
  return out;
}

Distribution step(const Pfa& p, const Distribution& d, LetterId a) {
  if (a.index >= p.num_letters())
    throw AlphabetError("letter #" + std::to_string(a.index) + " is not in the alphabet");
  Row next;
  next.reserve(d.support_size() * 2);
  for (const auto& [s, mass] : d.entries())
    for (const auto& e : p.row(a, s)) next.push_back({e.target, mass * e.prob});
  return Distribution(std::move(next));
}

Distribution run(const Pfa& p, const Distribution& d, const Word& w) {
  Distribution cur = d;
  for (auto a : w) cur = step(p, cur, a);
  return cur;
}

Rational reach_prob(const Pfa& p, StateId s, const Word& w, const std::vector<StateId>& targets) {
  const auto d = run(p, Distribution::dirac(s), w);
  std::vector<StateId> sorted = targets;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  Rational sum = 0;
  for (auto t : sorted) sum += d[t];
  return sum;
}

Rational accepting_mass(const Pfa& p, const Distribution& d) {
  Rational sum = 0;
  for (const auto& e : d.entries())
    if (p.is_accepting(e.target)) sum += e.prob;
  return sum;
}

Rational accept_prob(const Pfa& p, const Word& w) {
  return accepting_mass(p, run(p, Distribution::dirac(p.initial()), w));
}

std::vector<ProbTransition> prob_transitions(const Pfa& p) {
  std::vector<ProbTransition> out;
  for (std::uint32_t si = 0; si < p.num_states(); ++si)
    for (std::uint32_t ai = 0; ai < p.num_letters(); ++ai) {
      const auto& row = p.row(LetterId{ai}, StateId{si});
      bool probabilistic = std::any_of(row.begin(), row.end(), [](const Entry& e) { return e.prob != 1; });
      if (probabilistic) out.push_back({StateId{si}, LetterId{ai}});
    }
  return out;
}

namespace {

template <typename Pred>
bool all_entries(const Pfa& p, Pred pred) {
  for (std::uint32_t ai = 0; ai < p.num_letters(); ++ai)
    for (std::uint32_t si = 0; si < p.num_states(); ++si)
      for (const auto& e : p.row(LetterId{ai}, StateId{si}))
        if (!pred(e.prob)) return false;
  return true;
}

}  // namespace

bool is_simple(const Pfa& p) {
  const Rational half(1, 2);
  return all_entries(p, [&](const Rational& x) { return x == 1 || x == half; });
}

bool is_thirds(const Pfa& p) {
  const Rational third(1, 3), two_thirds(2, 3);
  return all_entries(p, [&](const Rational& x) { return x == 1 || x == third || x == two_thirds; });
}

std::vector<Word> all_words(std::size_t alphabet_size, std::size_t max_len) {
  std::vector<Word> out{Word{}};
  if (alphabet_size == 0) return out;
  std::size_t level_begin = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    const std::size_t level_end = out.size();
    for (std::size_t i = level_begin; i < level_end; ++i)
      for (std::uint32_t a = 0; a < alphabet_size; ++a) {
        Word w = out[i];
        w.push_back(LetterId{a});
        out.push_back(std::move(w));
      }
    level_begin = level_end;
  }
  return out;
}

}  // namespace pfa
