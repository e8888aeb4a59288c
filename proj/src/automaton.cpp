#include "pfa/automaton.hpp"

#include <algorithm>

namespace pfa {

Row dirac_row(StateId target) { return Row{Entry{target, Rational(1)}}; }

Row normalize_row(Row row) {
  std::sort(row.begin(), row.end(), [](const Entry& a, const Entry& b) { return a.target < b.target; });
  Row out;
  out.reserve(row.size());
  for (auto& e : row) {
    if (!out.empty() && out.back().target == e.target)
      out.back().prob += e.prob;
    else
      out.push_back(std::move(e));
  }
  std::erase_if(out, [](const Entry& e) { return e.prob == 0; });
  return out;
}

// ---------------------------------------------------------------------------

Distribution::Distribution(Row entries) : entries_(normalize_row(std::move(entries))) {}

Distribution Distribution::dirac(StateId state) { return Distribution(dirac_row(state)); }

Rational Distribution::operator[](StateId state) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), state,
                             [](const Entry& e, StateId s) { return e.target < s; });
  if (it != entries_.end() && it->target == state) return it->prob;
  return 0;
}

Rational Distribution::total() const {
  Rational sum = 0;
  for (const auto& e : entries_) sum += e.prob;
  return sum;
}

Distribution Distribution::scaled(const Rational& factor) const {
  Row row = entries_;
  for (auto& e : row) e.prob *= factor;
  return Distribution(std::move(row));
}

Distribution operator+(const Distribution& a, const Distribution& b) {
  Row row = a.entries_;
  row.insert(row.end(), b.entries_.begin(), b.entries_.end());
  return Distribution(std::move(row));
}

bool operator<(const Distribution& a, const Distribution& b) {
  return std::lexicographical_compare(
      a.entries_.begin(), a.entries_.end(), b.entries_.begin(), b.entries_.end(),
      [](const Entry& x, const Entry& y) {
        if (x.target != y.target) return x.target < y.target;
        return x.prob < y.prob;
      });
}

// ---------------------------------------------------------------------------

Pfa::Pfa(std::vector<std::string> states, std::vector<std::string> alphabet, StateId initial,
         std::vector<StateId> accepting)
    : state_names_(std::move(states)), letter_names_(std::move(alphabet)), initial_(initial) {
  rows_.resize(letter_names_.size());
  for (auto& rows : rows_) {
    rows.reserve(state_names_.size());
    for (std::uint32_t s = 0; s < state_names_.size(); ++s) rows.push_back(dirac_row(StateId{s}));
  }
  set_accepting(std::move(accepting));
}

std::optional<StateId> Pfa::find_state(std::string_view name) const {
  auto it = std::find(state_names_.begin(), state_names_.end(), name);
  if (it == state_names_.end()) return std::nullopt;
  return StateId{static_cast<std::uint32_t>(it - state_names_.begin())};
}

std::optional<LetterId> Pfa::find_letter(std::string_view name) const {
  auto it = std::find(letter_names_.begin(), letter_names_.end(), name);
  if (it == letter_names_.end()) return std::nullopt;
  return LetterId{static_cast<std::uint32_t>(it - letter_names_.begin())};
}

StateId Pfa::state(std::string_view name) const {
  if (auto s = find_state(name)) return *s;
  throw AlphabetError("unknown state '" + std::string(name) + "'");
}

LetterId Pfa::letter(std::string_view name) const {
  if (auto a = find_letter(name)) return *a;
  throw AlphabetError("unknown letter '" + std::string(name) + "'");
}

bool Pfa::is_accepting(StateId s) const {
  return s.index < accepting_mask_.size() && accepting_mask_[s.index];
}

void Pfa::set_accepting(std::vector<StateId> accepting) {
  std::sort(accepting.begin(), accepting.end());
  accepting.erase(std::unique(accepting.begin(), accepting.end()), accepting.end());
  accepting_ = std::move(accepting);
  accepting_mask_.assign(state_names_.size(), false);
  for (auto s : accepting_)
    if (s.index < state_names_.size()) accepting_mask_[s.index] = true;
}

void Pfa::check_letter(LetterId a) const {
  if (a.index >= letter_names_.size())
    throw AlphabetError("letter #" + std::to_string(a.index) + " is not in the alphabet");
}

void Pfa::check_state(StateId s) const {
  if (s.index >= state_names_.size())
    throw AlphabetError("state #" + std::to_string(s.index) + " is not a state of the automaton");
}

const Row& Pfa::row(LetterId a, StateId s) const {
  check_letter(a);
  check_state(s);
  return rows_[a.index][s.index];
}

void Pfa::set_row(LetterId a, StateId s, Row row) {
  check_letter(a);
  check_state(s);
  rows_[a.index][s.index] = normalize_row(std::move(row));
}

bool Pfa::is_identity_row(LetterId a, StateId s) const {
  const Row& r = row(a, s);
  return r.size() == 1 && r[0].target == s && r[0].prob == 1;
}

Word Pfa::word(std::string_view dotted) const {
  Word w;
  if (dotted.empty()) return w;
  std::size_t start = 0;
  while (true) {
    auto dot = dotted.find('.', start);
    w.push_back(letter(dotted.substr(start, dot - start)));
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  return w;
}

std::string Pfa::format_word(const Word& w) const {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += '.';
    out += letter_name(w[i]);
  }
  return out;
}

}  // namespace pfa
