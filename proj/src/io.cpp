#include "pfa/io.hpp"

#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <vector>

namespace pfa {

namespace {

struct Token {
  std::string text;
  std::size_t column;  // 1-based
};

// Whitespace-separated tokens; a comma outside brackets is a token of its own so
// that `check[a,q]` stays in one piece.
std::vector<Token> tokenize(std::string_view line, std::size_t line_no) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      continue;
    }
    if (c == ',') {
      out.push_back({",", i + 1});
      ++i;
      continue;
    }
    Token tok{{}, i + 1};
    int depth = 0;
    while (i < line.size()) {
      c = line[i];
      if (c == ' ' || c == '\t' || c == '\r') break;
      if (c == ',' && depth == 0) break;
      if (c == '[') ++depth;
      if (c == ']' && --depth < 0) throw ParseError(line_no, i + 1, "unbalanced ']'");
      tok.text += c;
      ++i;
    }
    if (depth != 0) throw ParseError(line_no, tok.column, "unbalanced '[' in '" + tok.text + "'");
    out.push_back(std::move(tok));
  }
  return out;
}

class Parser {
 public:
  Pfa run(std::string_view text) {
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      auto eol = text.find('\n', pos);
      if (eol == std::string_view::npos) eol = text.size();
      std::string_view line = text.substr(pos, eol - pos);
      ++line_no;
      if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
      handle(tokenize(line, line_no), line_no);
      pos = eol + 1;
    }
    const auto end_line = line_no + 1;
    if (!header_seen_) throw ParseError(1, 1, "expected 'pfa' header");
    if (!states_) throw ParseError(end_line, 1, "missing 'states:' line");
    if (!letters_) throw ParseError(end_line, 1, "missing 'alphabet:' line");
    if (!initial_) throw ParseError(end_line, 1, "missing 'initial:' line");

    Pfa p(*states_, *letters_, *initial_, accepting_);
    for (auto& [key, row] : rows_) p.set_row(LetterId{key.first}, StateId{key.second}, std::move(row));
    return p;
  }

 private:
  void handle(const std::vector<Token>& toks, std::size_t line_no) {
    if (toks.empty()) return;
    const auto& head = toks[0];
    if (!header_seen_) {
      if (head.text != "pfa" || toks.size() != 1) throw ParseError(line_no, head.column, "expected 'pfa' header");
      header_seen_ = true;
      return;
    }
    if (head.text == "states:") {
      if (states_) throw ParseError(line_no, head.column, "duplicate 'states:' line");
      states_ = names(toks, line_no, "state", false);
      if (states_->empty()) throw ParseError(line_no, head.column, "at least one state is required");
    } else if (head.text == "alphabet:") {
      if (letters_) throw ParseError(line_no, head.column, "duplicate 'alphabet:' line");
      letters_ = names(toks, line_no, "letter", true);
    } else if (head.text == "initial:") {
      if (initial_) throw ParseError(line_no, head.column, "duplicate 'initial:' line");
      if (toks.size() != 2) throw ParseError(line_no, head.column, "'initial:' takes exactly one state");
      initial_ = state_ref(toks[1], line_no);
    } else if (head.text == "accepting:") {
      if (accepting_seen_) throw ParseError(line_no, head.column, "duplicate 'accepting:' line");
      accepting_seen_ = true;
      for (std::size_t i = 1; i < toks.size(); ++i) accepting_.push_back(state_ref(toks[i], line_no));
    } else if (head.text == "trans") {
      transition(toks, line_no);
    } else {
      throw ParseError(line_no, head.column, "unknown directive '" + head.text + "'");
    }
  }

  std::vector<std::string> names(const std::vector<Token>& toks, std::size_t line_no, const char* what,
                                 bool letter) {
    std::vector<std::string> out;
    std::set<std::string> seen;
    for (std::size_t i = 1; i < toks.size(); ++i) {
      const auto& t = toks[i];
      if (t.text == "," || t.text == "->") throw ParseError(line_no, t.column, std::string("expected a ") + what + " name");
      if (letter && t.text.find('.') != std::string::npos)
        throw ParseError(line_no, t.column, "letter names may not contain '.'");
      if (!seen.insert(t.text).second)
        throw ParseError(line_no, t.column, std::string("duplicate ") + what + " '" + t.text + "'");
      out.push_back(t.text);
    }
    return out;
  }

  StateId state_ref(const Token& t, std::size_t line_no) {
    if (!states_) throw ParseError(line_no, t.column, "'states:' must come before state references");
    for (std::uint32_t i = 0; i < states_->size(); ++i)
      if ((*states_)[i] == t.text) return StateId{i};
    throw ParseError(line_no, t.column, "unknown state '" + t.text + "'");
  }

  LetterId letter_ref(const Token& t, std::size_t line_no) {
    if (!letters_) throw ParseError(line_no, t.column, "'alphabet:' must come before transitions");
    for (std::uint32_t i = 0; i < letters_->size(); ++i)
      if ((*letters_)[i] == t.text) return LetterId{i};
    throw ParseError(line_no, t.column, "unknown letter '" + t.text + "'");
  }

  // trans <letter> <state> -> <p> <state> [, <p> <state>]*
  void transition(const std::vector<Token>& toks, std::size_t line_no) {
    auto expect = [&](std::size_t i, const char* what) -> const Token& {
      if (i >= toks.size()) {
        const auto& last = toks.back();
        throw ParseError(line_no, last.column + last.text.size(), std::string("expected ") + what);
      }
      return toks[i];
    };
    const LetterId a = letter_ref(expect(1, "a letter"), line_no);
    const StateId s = state_ref(expect(2, "a state"), line_no);
    const auto& arrow = expect(3, "'->'");
    if (arrow.text != "->") throw ParseError(line_no, arrow.column, "expected '->'");

    Row row;
    std::size_t i = 4;
    while (true) {
      const auto& prob_tok = expect(i, "a probability");
      auto prob = parse_rational(prob_tok.text);
      if (!prob) throw ParseError(line_no, prob_tok.column, "malformed probability '" + prob_tok.text + "'");
      row.push_back({state_ref(expect(i + 1, "a target state"), line_no), *prob});
      i += 2;
      if (i == toks.size()) break;
      if (toks[i].text != ",") throw ParseError(line_no, toks[i].column, "expected ',' between entries");
      ++i;
    }
    if (!rows_.emplace(std::pair{a.index, s.index}, std::move(row)).second)
      throw ParseError(line_no, toks[0].column,
                       "duplicate transition for (" + toks[1].text + ", " + toks[2].text + ")");
  }

  bool header_seen_ = false;
  bool accepting_seen_ = false;
  std::optional<std::vector<std::string>> states_, letters_;
  std::optional<StateId> initial_;
  std::vector<StateId> accepting_;
  std::map<std::pair<std::uint32_t, std::uint32_t>, Row> rows_;
};

}  // namespace

Pfa parse(std::string_view text) { return Parser{}.run(text); }

std::string serialize(const Pfa& p) {
  std::ostringstream out;
  out << "pfa\nstates:";
  for (const auto& s : p.state_names()) out << ' ' << s;
  out << "\nalphabet:";
  for (const auto& a : p.letter_names()) out << ' ' << a;
  out << "\ninitial: " << p.state_name(p.initial()) << "\naccepting:";
  for (auto s : p.accepting()) out << ' ' << p.state_name(s);
  out << '\n';
  for (std::uint32_t a = 0; a < p.num_letters(); ++a)
    for (std::uint32_t s = 0; s < p.num_states(); ++s) {
      if (p.is_identity_row(LetterId{a}, StateId{s})) continue;
      out << "trans " << p.letter_name(LetterId{a}) << ' ' << p.state_name(StateId{s}) << " ->";
      const auto& row = p.row(LetterId{a}, StateId{s});
      for (std::size_t i = 0; i < row.size(); ++i)
        out << (i ? ", " : " ") << to_string(row[i].prob) << ' ' << p.state_name(row[i].target);
      out << '\n';
    }
  return out.str();
}

std::string_view grammar_help() {
  return "automaton file format:\n"
         "  pfa\n"
         "  states: q0 q1 ...\n"
         "  alphabet: a b ...\n"
         "  initial: q0\n"
         "  accepting: q1 ...\n"
         "  trans <letter> <state> -> <p1> <state1> [, <p2> <state2> ...]\n"
         "probabilities are N/D or integers; omitted rows are identity self-loops; '#' starts a comment.\n"
         "words are dot-separated letter names, e.g. a.b or check[a,q0].star; the empty string is the empty word.\n";
}

}  // namespace pfa
