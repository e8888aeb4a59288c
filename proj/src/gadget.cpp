#include "pfa/gadget.hpp"

#include <algorithm>

namespace pfa {

std::string GadgetLetter::name() const {
  switch (kind) {
    case Kind::Check: return "check[" + letter + "," + state + "]";
    case Kind::Apply: return "apply[" + letter + "," + state + "]";
    case Kind::Star: return "star";
    case Kind::Merge: return "merge";
    case Kind::Finish: return "finish";
    case Kind::Sharp: return "sharp";
  }
  return {};
}

std::string GadgetState::name() const {
  switch (kind) {
    case Kind::Orig: return state;
    case Kind::Barred: return "bar[" + state + "]";
    case Kind::SStar: return "s_star";
    case Kind::S0: return "s0";
    case Kind::S1: return "s1";
    case Kind::Wait: return "wait";
    case Kind::Bottom: return "bot";
    case Kind::CState: return "c" + std::to_string(index);
    case Kind::CoinEntry: return "g[" + state + "," + letter + "]";
    case Kind::CoinLow: return "h0[" + state + "," + letter + "]";
    case Kind::CoinHigh: return "h1[" + state + "," + letter + "]";
    case Kind::CoinLost: return "lost";
  }
  return {};
}

const Word& Morphism::image(LetterId a) const {
  if (a.index >= images_.size())
    throw AlphabetError("letter #" + std::to_string(a.index) + " is outside the morphism domain");
  return images_[a.index];
}

Word Morphism::encode(const Word& w) const {
  Word out;
  for (auto a : w) {
    const auto& img = image(a);
    out.insert(out.end(), img.begin(), img.end());
  }
  return out;
}

std::optional<Word> Morphism::decode(const Word& w) const {
  Word out;
  std::size_t pos = 0;
  while (pos < w.size()) {
    bool matched = false;
    for (std::uint32_t a = 0; a < images_.size(); ++a) {
      const auto& img = images_[a];
      if (img.empty() || pos + img.size() > w.size()) continue;
      if (std::equal(img.begin(), img.end(), w.begin() + static_cast<std::ptrdiff_t>(pos))) {
        out.push_back(LetterId{a});
        pos += img.size();
        matched = true;
        break;
      }
    }
    if (!matched) return std::nullopt;
  }
  return out;
}

StateId TargetNames::add_state(std::string name) {
  if (std::find(states_.begin(), states_.end(), name) != states_.end())
    throw ReductionError("state name '" + name + "' collides with a gadget state; rename it in the source");
  states_.push_back(std::move(name));
  return StateId{static_cast<std::uint32_t>(states_.size() - 1)};
}

LetterId TargetNames::add_letter(std::string name) {
  if (std::find(letters_.begin(), letters_.end(), name) != letters_.end())
    throw ReductionError("letter name '" + name + "' collides with a gadget letter; rename it in the source");
  letters_.push_back(std::move(name));
  return LetterId{static_cast<std::uint32_t>(letters_.size() - 1)};
}

}  // namespace pfa
