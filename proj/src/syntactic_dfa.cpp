#include "pfa/syntactic_dfa.hpp"

#include <map>

namespace pfa {

SyntacticDfa SyntacticDfa::build(std::size_t alphabet_size, const Morphism& morphism,
                                 std::optional<LetterId> separator) {
  // Trie over the images. Node 0 is the root; leaves are the ends of images.
  struct Node {
    std::map<std::uint32_t, std::uint32_t> children;
    bool leaf = false;
  };
  std::vector<Node> trie(1);
  for (const auto& img : morphism.images()) {
    if (img.empty()) throw Error("syntactic automaton needs non-empty images");
    std::uint32_t node = 0;
    for (auto a : img) {
      if (trie[node].leaf) throw Error("syntactic automaton needs prefix-free images");
      auto [it, inserted] = trie[node].children.try_emplace(a.index, 0);
      if (inserted) {
        it->second = static_cast<std::uint32_t>(trie.size());
        trie.emplace_back();
      }
      node = it->second;
    }
    if (!trie[node].children.empty()) throw Error("syntactic automaton needs prefix-free images");
    trie[node].leaf = true;
  }

  // DFA layout: 0 = start (accepting), inner trie nodes, [mid], dead.
  // `mid` is the state between two images inside a separated block; without a
  // separator it coincides with the start state.
  std::vector<std::uint32_t> dfa_of(trie.size(), 0);
  std::uint32_t count = 1;
  for (std::uint32_t t = 1; t < trie.size(); ++t)
    if (!trie[t].leaf) dfa_of[t] = count++;
  const std::uint32_t mid = separator ? count++ : 0;
  for (std::uint32_t t = 1; t < trie.size(); ++t)
    if (trie[t].leaf) dfa_of[t] = mid;
  const std::uint32_t dead = count++;

  SyntacticDfa dfa;
  dfa.alphabet_size_ = alphabet_size;
  dfa.delta_.assign(count, std::vector<std::uint32_t>(alphabet_size, dead));
  dfa.accepting_.assign(count, false);
  dfa.accepting_[0] = true;

  auto wire_children = [&](std::uint32_t from_dfa, const Node& node) {
    for (auto [letter, child] : node.children) {
      if (letter >= alphabet_size) throw AlphabetError("image letter outside the target alphabet");
      dfa.delta_[from_dfa][letter] = dfa_of[child];
    }
  };
  wire_children(0, trie[0]);
  if (separator) {
    wire_children(mid, trie[0]);
    dfa.delta_[0][separator->index] = 0;
    dfa.delta_[mid][separator->index] = 0;
  }
  for (std::uint32_t t = 1; t < trie.size(); ++t)
    if (!trie[t].leaf) wire_children(dfa_of[t], trie[t]);
  return dfa;
}

std::uint32_t SyntacticDfa::run(const Word& w, std::uint32_t from) const {
  std::uint32_t q = from;
  for (auto a : w) q = next(q, a);
  return q;
}

std::optional<std::size_t> SyntacticDfa::first_deviation(const Word& w) const {
  std::uint32_t q = start();
  for (std::size_t i = 0; i < w.size(); ++i) {
    q = next(q, w[i]);
    if (q == dead()) return i;
  }
  return std::nullopt;
}

}  // namespace pfa
