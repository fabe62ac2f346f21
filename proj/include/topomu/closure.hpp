#pragma once

// Sigma closure sets. Elements are (prefix, base) pairs where the prefix is
// a word over {~, <*>} reduced by the Kuratowski-style rewrites
//
//   ~~ w        -> w
//   <*><*> w    -> <*> w
//   (<*>~)^3 <*> w -> <*>~<*> w     (derived from ~~ and ((<*>~)^2)^2 = (<*>~)^2)
//
// which leaves exactly the 14 S4 modality normal forms over a base. Closing
// a finite subformula-closed set under ~ and <*> modulo these rewrites stays
// finite; that is the whole point.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "topomu/formula.hpp"

namespace topomu {

// Prefix words use 'N' for ~ and 'S' for <*>, outermost first.
inline std::string normalizePrefixWord(std::string w) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i + 1 < w.size(); ++i) {
      if (w[i] == 'N' && w[i + 1] == 'N') {
        w.erase(i, 2);
        changed = true;
        break;
      }
      if (w[i] == 'S' && w[i + 1] == 'S') {
        w.erase(i, 1);
        changed = true;
        break;
      }
    }
    if (changed) continue;
    size_t p = w.find("SNSNSNS");
    if (p != std::string::npos) {
      w.replace(p, 7, "SNS");
      changed = true;
    }
  }
  return w;
}

// All 14 reduced words (identity included), in length order.
inline std::vector<std::string> allPrefixNormalForms() {
  return {"",     "N",     "S",      "NS",      "SN",     "NSN",    "SNS",
          "NSNS", "SNSN",  "NSNSN",  "SNSNS",   "NSNSNS", "SNSNSN", "NSNSNSN"};
}

// Applies a prefix word to a base formula, outermost character first.
inline Formula applyPrefix(const std::string& word, Formula base) {
  for (auto it = word.rbegin(); it != word.rend(); ++it)
    base = *it == 'N' ? Formula::neg(std::move(base)) : Formula::starDia(std::move(base));
  return base;
}

// Splits a formula into (prefix word, base) by peeling leading negations and
// <*>-shaped nodes (the core encoding of f | <>f).
inline std::pair<std::string, Formula> peelPrefix(Formula f) {
  std::string word;
  for (;;) {
    if (f.kind() == Kind::Neg) {
      const Formula& inner = f.child();
      if (inner.kind() == Kind::And && inner.left().kind() == Kind::Neg &&
          inner.right().kind() == Kind::Neg && inner.right().child().kind() == Kind::Dia &&
          inner.left().child() == inner.right().child().child()) {
        word += 'S';
        f = inner.left().child();
        continue;
      }
      word += 'N';
      f = f.child();
      continue;
    }
    break;
  }
  return {std::move(word), std::move(f)};
}

struct SigmaElement {
  std::string prefix;  // reduced word
  Formula base;
  Formula full;  // applyPrefix(prefix, base)
};

// Finite closure set: contains T and the seed, closed under subformulas and
// under prefix-normalized ~ / <*> application.
class SigmaSet {
 public:
  int size() const { return int(elems_.size()); }
  const std::vector<SigmaElement>& elements() const { return elems_; }

  bool contains(const Formula& f) const {
    auto [word, base] = peelPrefix(f);
    return index_.count({normalizePrefixWord(word), base}) > 0;
  }

  // Inserts the peeled, normalized form; returns true when new.
  bool insert(const Formula& f) {
    auto [word, base] = peelPrefix(f);
    return insertPair(normalizePrefixWord(std::move(word)), std::move(base));
  }

  bool insertPair(std::string word, Formula base) {
    auto key = std::make_pair(word, base);
    if (index_.count(key)) return false;
    index_[key] = int(elems_.size());
    Formula full = applyPrefix(word, base);
    elems_.push_back({std::move(word), std::move(base), std::move(full)});
    return true;
  }

 private:
  std::vector<SigmaElement> elems_;
  std::map<std::pair<std::string, Formula>, int> index_;
};

// Seed must be alpha-normal. The result contains T, all subformulas of the
// seed, and is saturated under prefix-normalized ~ and <*>.
inline SigmaSet closureSet(const Formula& seed) {
  SigmaSet sigma;
  sigma.insert(Formula::top());
  for (const Formula& sub : subformulas(seed)) sigma.insert(sub);
  // Saturate; elements() grows while we scan it.
  for (size_t i = 0; i < sigma.elements().size(); ++i) {
    const SigmaElement e = sigma.elements()[i];
    sigma.insertPair(normalizePrefixWord("N" + e.prefix), e.base);
    sigma.insertPair(normalizePrefixWord("S" + e.prefix), e.base);
  }
  return sigma;
}

}  // namespace topomu
