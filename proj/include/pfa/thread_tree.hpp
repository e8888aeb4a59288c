#pragma once

#include <string>
#include <vector>

#include "pfa/automaton.hpp"

namespace pfa {

/// Computation of a PFA on one word, drawn as parallel threads: one node per
/// (state, depth) in the support, one edge per positive transition. Threads that
/// reach the same state at the same depth share a node.
struct ThreadTree {
  struct Edge {
    std::size_t depth;  // edge goes from depth to depth + 1
    StateId from, to;
    Rational prob;
  };

  Word word;
  std::vector<std::vector<StateId>> levels;  // sorted support at each depth 0..|word|
  std::vector<Edge> edges;

  std::size_t out_degree(std::size_t depth, StateId s) const;
  std::size_t in_degree(std::size_t depth, StateId s) const;
  /// (depth, state) pairs with more than one successor.
  std::vector<std::pair<std::size_t, StateId>> branch_nodes() const;
  /// (depth, state) pairs reached from more than one predecessor.
  std::vector<std::pair<std::size_t, StateId>> merge_nodes() const;
};

ThreadTree build_thread_tree(const Pfa& p, const Word& w);

/// DOT digraph with one column per depth headed by the letter read, nodes named
/// `s_<state>_<depth>`, branch nodes filled and merge nodes double-circled.
std::string render_dot(const Pfa& p, const ThreadTree& tree);

inline std::string render_thread_tree(const Pfa& p, const Word& w) { return render_dot(p, build_thread_tree(p, w)); }

}  // namespace pfa
