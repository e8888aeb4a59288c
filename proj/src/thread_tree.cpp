#include "pfa/thread_tree.hpp"

#include <algorithm>
#include <sstream>

#include "pfa/core.hpp"

namespace pfa {

std::size_t ThreadTree::out_degree(std::size_t depth, StateId s) const {
  return static_cast<std::size_t>(
      std::count_if(edges.begin(), edges.end(), [&](const Edge& e) { return e.depth == depth && e.from == s; }));
}

std::size_t ThreadTree::in_degree(std::size_t depth, StateId s) const {
  if (depth == 0) return 0;
  return static_cast<std::size_t>(
      std::count_if(edges.begin(), edges.end(), [&](const Edge& e) { return e.depth + 1 == depth && e.to == s; }));
}

std::vector<std::pair<std::size_t, StateId>> ThreadTree::branch_nodes() const {
  std::vector<std::pair<std::size_t, StateId>> out;
  for (std::size_t d = 0; d < levels.size(); ++d)
    for (auto s : levels[d])
      if (out_degree(d, s) > 1) out.emplace_back(d, s);
  return out;
}

std::vector<std::pair<std::size_t, StateId>> ThreadTree::merge_nodes() const {
  std::vector<std::pair<std::size_t, StateId>> out;
  for (std::size_t d = 0; d < levels.size(); ++d)
    for (auto s : levels[d])
      if (in_degree(d, s) > 1) out.emplace_back(d, s);
  return out;
}

ThreadTree build_thread_tree(const Pfa& p, const Word& w) {
  ThreadTree tree;
  tree.word = w;
  Distribution d = Distribution::dirac(p.initial());
  auto support = [](const Distribution& dist) {
    std::vector<StateId> out;
    for (const auto& e : dist.entries()) out.push_back(e.target);
    return out;
  };
  tree.levels.push_back(support(d));
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (const auto& [s, mass] : d.entries())
      for (const auto& e : p.row(w[i], s)) tree.edges.push_back({i, s, e.target, e.prob});
    d = step(p, d, w[i]);
    tree.levels.push_back(support(d));
  }
  return tree;
}

namespace {

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

std::string node_id(const Pfa& p, StateId s, std::size_t depth) {
  return "\"s_" + escape(p.state_name(s)) + "_" + std::to_string(depth) + "\"";
}

}  // namespace

std::string render_dot(const Pfa& p, const ThreadTree& tree) {
  std::ostringstream out;
  out << "digraph thread_tree {\n  rankdir=LR;\n  node [shape=circle];\n";
  for (std::size_t d = 0; d < tree.levels.size(); ++d) {
    const std::string header = d == 0 ? std::string() : p.letter_name(tree.word[d - 1]);
    out << "  { rank=same; \"col_" << d << "\" [shape=plaintext, label=\"" << escape(header) << "\"];";
    for (auto s : tree.levels[d]) {
      out << ' ' << node_id(p, s, d) << " [label=\"" << escape(p.state_name(s)) << '"';
      if (tree.out_degree(d, s) > 1) out << ", style=filled, fillcolor=lightgrey";
      if (tree.in_degree(d, s) > 1) out << ", peripheries=2";
      out << "];";
    }
    out << " }\n";
  }
  for (std::size_t d = 0; d + 1 < tree.levels.size(); ++d)
    out << "  \"col_" << d << "\" -> \"col_" << d + 1 << "\" [style=invis];\n";
  for (const auto& e : tree.edges) {
    out << "  " << node_id(p, e.from, e.depth) << " -> " << node_id(p, e.to, e.depth + 1);
    if (e.prob != 1) out << " [label=\"" << to_string(e.prob) << "\"]";
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace pfa
