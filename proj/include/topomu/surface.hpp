#pragma once

// Surface formulas: the user-facing grammar with all abbreviations
// (bot, or, implies, iff, box, <*>, [*], mu, tangled operators).
// normalize() expands everything to core kinds, alpha-normalizes and
// checks positivity of fixpoint bodies.

#include <algorithm>
#include <memory>
#include <string>
#include <vector>

#include "topomu/formula.hpp"

namespace topomu {

enum class SKind : uint8_t {
  Top, Bot, Var, Neg, And, Or, Implies, Iff,
  Dia, Box, StarDia, StarBox, Mu, Nu, TangleD, TangleC
};

class SurfaceFormula {
 public:
  SurfaceFormula() = default;

  SKind kind() const { return node_->kind; }
  const std::string& name() const { return node_->name; }
  const std::vector<SurfaceFormula>& children() const { return node_->children; }
  const SurfaceFormula& child(size_t i = 0) const { return node_->children[i]; }
  bool valid() const { return node_ != nullptr; }

  // Node count of the surface form; tangle arguments all count.
  int size() const { return node_->size; }

  static SurfaceFormula leaf(SKind k, std::string name = "") {
    return make(k, std::move(name), {});
  }
  static SurfaceFormula top() { return leaf(SKind::Top); }
  static SurfaceFormula bot() { return leaf(SKind::Bot); }
  static SurfaceFormula var(std::string n) { return leaf(SKind::Var, std::move(n)); }
  static SurfaceFormula unary(SKind k, SurfaceFormula c) { return make(k, "", {std::move(c)}); }
  static SurfaceFormula binary(SKind k, SurfaceFormula l, SurfaceFormula r) {
    return make(k, "", {std::move(l), std::move(r)});
  }
  static SurfaceFormula binder(SKind k, std::string v, SurfaceFormula body) {
    return make(k, std::move(v), {std::move(body)});
  }
  static SurfaceFormula tangle(SKind k, std::vector<SurfaceFormula> args) {
    return make(k, "", std::move(args));
  }

  int compare(const SurfaceFormula& o) const {
    if (node_ == o.node_) return 0;
    if (size() != o.size()) return size() < o.size() ? -1 : 1;
    if (kind() != o.kind()) return kind() < o.kind() ? -1 : 1;
    if (name() != o.name()) return name() < o.name() ? -1 : 1;
    if (children().size() != o.children().size())
      return children().size() < o.children().size() ? -1 : 1;
    for (size_t i = 0; i < children().size(); ++i) {
      int c = children()[i].compare(o.children()[i]);
      if (c) return c;
    }
    return 0;
  }
  bool operator==(const SurfaceFormula& o) const { return compare(o) == 0; }
  bool operator!=(const SurfaceFormula& o) const { return compare(o) != 0; }
  bool operator<(const SurfaceFormula& o) const { return compare(o) < 0; }

 private:
  struct Node {
    SKind kind;
    std::string name;
    std::vector<SurfaceFormula> children;
    int size;
  };

  static SurfaceFormula make(SKind k, std::string name, std::vector<SurfaceFormula> ch) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->name = std::move(name);
    n->children = std::move(ch);
    n->size = 1;
    for (const auto& c : n->children) n->size += c.size();
    SurfaceFormula f;
    f.node_ = std::move(n);
    return f;
  }

  std::shared_ptr<const Node> node_;
};

// ---------------------------------------------------------------------------
// Surface pretty-printer

namespace detail {
// precedence: binder 0, iff 1, implies 2, or 3, and 4, unary 5
inline void printSurf(const SurfaceFormula& f, int parentPrec, std::string& out) {
  auto wrap = [&](int myPrec, auto&& body) {
    bool paren = parentPrec > myPrec;
    if (paren) out += "(";
    body();
    if (paren) out += ")";
  };
  switch (f.kind()) {
    case SKind::Top: out += "T"; return;
    case SKind::Bot: out += "F"; return;
    case SKind::Var: out += f.name(); return;
    case SKind::Neg: out += "~"; printSurf(f.child(), 5, out); return;
    case SKind::Dia: out += "<>"; printSurf(f.child(), 5, out); return;
    case SKind::Box: out += "[]"; printSurf(f.child(), 5, out); return;
    case SKind::StarDia: out += "<*>"; printSurf(f.child(), 5, out); return;
    case SKind::StarBox: out += "[*]"; printSurf(f.child(), 5, out); return;
    case SKind::And:
      wrap(4, [&] { printSurf(f.child(0), 4, out); out += " & "; printSurf(f.child(1), 5, out); });
      return;
    case SKind::Or:
      wrap(3, [&] { printSurf(f.child(0), 3, out); out += " | "; printSurf(f.child(1), 4, out); });
      return;
    case SKind::Implies:  // right-associative
      wrap(2, [&] { printSurf(f.child(0), 3, out); out += " -> "; printSurf(f.child(1), 2, out); });
      return;
    case SKind::Iff:
      wrap(1, [&] { printSurf(f.child(0), 2, out); out += " <-> "; printSurf(f.child(1), 1, out); });
      return;
    case SKind::Mu:
    case SKind::Nu:
      wrap(0, [&] {
        out += (f.kind() == SKind::Mu ? "mu " : "nu ") + f.name() + ". ";
        printSurf(f.child(), 0, out);
      });
      return;
    case SKind::TangleD:
    case SKind::TangleC: {
      out += f.kind() == SKind::TangleD ? "tangle_d{" : "tangle_c{";
      for (size_t i = 0; i < f.children().size(); ++i) {
        if (i) out += ", ";
        printSurf(f.children()[i], 0, out);
      }
      out += "}";
      return;
    }
  }
}
}  // namespace detail

inline std::string print(const SurfaceFormula& f) {
  std::string out;
  detail::printSurf(f, 0, out);
  return out;
}

// ---------------------------------------------------------------------------
// Normalization to core

namespace detail {

inline void collectSurfaceNames(const SurfaceFormula& f, std::set<std::string>& out) {
  if (!f.name().empty()) out.insert(f.name());
  for (const auto& c : f.children()) collectSurfaceNames(c, out);
}

inline Formula desugar(const SurfaceFormula& f, std::set<std::string>& used) {
  switch (f.kind()) {
    case SKind::Top: return Formula::top();
    case SKind::Bot: return Formula::bot();
    case SKind::Var: return Formula::var(f.name());
    case SKind::Neg: return Formula::neg(desugar(f.child(), used));
    case SKind::And: {
      Formula l = desugar(f.child(0), used);
      return Formula::conj(std::move(l), desugar(f.child(1), used));
    }
    case SKind::Or: {
      Formula l = desugar(f.child(0), used);
      return Formula::disj(std::move(l), desugar(f.child(1), used));
    }
    case SKind::Implies: {
      Formula l = desugar(f.child(0), used);
      return Formula::implies(std::move(l), desugar(f.child(1), used));
    }
    case SKind::Iff: {
      Formula l = desugar(f.child(0), used);
      Formula r = desugar(f.child(1), used);
      return Formula::conj(Formula::implies(l, r), Formula::implies(r, l));
    }
    case SKind::Dia: return Formula::dia(desugar(f.child(), used));
    case SKind::Box: return Formula::box(desugar(f.child(), used));
    case SKind::StarDia: return Formula::starDia(desugar(f.child(), used));
    case SKind::StarBox: return Formula::starBox(desugar(f.child(), used));
    case SKind::Nu: return Formula::nu(f.name(), desugar(f.child(), used));
    case SKind::Mu: {
      // mu x. phi(x)  :=  ~ nu x. ~ phi(~x)
      Formula body = desugar(f.child(), used);
      Formula flipped = substitute(body, f.name(), Formula::neg(Formula::var(f.name())));
      return Formula::neg(Formula::nu(f.name(), Formula::neg(std::move(flipped))));
    }
    case SKind::TangleD:
    case SKind::TangleC: {
      // tangle_d{g1..gk} := nu x. /\ <>(x & gi);  tangle_c uses <*>.
      // The empty conjunction is T, so tangle_d{} = nu x. T.
      std::string x = freshName("X", used);
      Formula conj;
      for (const auto& g : f.children()) {
        Formula arg = Formula::conj(Formula::var(x), desugar(g, used));
        Formula step = f.kind() == SKind::TangleD ? Formula::dia(std::move(arg))
                                                  : Formula::starDia(std::move(arg));
        conj = conj.valid() ? Formula::conj(std::move(conj), std::move(step)) : std::move(step);
      }
      if (!conj.valid()) conj = Formula::top();
      return Formula::nu(x, std::move(conj));
    }
  }
  return Formula::top();  // unreachable
}

}  // namespace detail

// Expands all sugar, alpha-normalizes, verifies positivity of every
// fixpoint body. Throws NotPositiveError otherwise.
inline Formula normalize(const SurfaceFormula& f) {
  std::set<std::string> used;
  detail::collectSurfaceNames(f, used);
  Formula core = detail::desugar(f, used);
  core = alphaNormalize(core);
  checkPositivity(core);
  return core;
}

// Core formulas embed into surface formulas.
inline SurfaceFormula toSurface(const Formula& f) {
  switch (f.kind()) {
    case Kind::Top: return SurfaceFormula::top();
    case Kind::Var: return SurfaceFormula::var(f.name());
    case Kind::Neg: return SurfaceFormula::unary(SKind::Neg, toSurface(f.child()));
    case Kind::Dia: return SurfaceFormula::unary(SKind::Dia, toSurface(f.child()));
    case Kind::And:
      return SurfaceFormula::binary(SKind::And, toSurface(f.left()), toSurface(f.right()));
    case Kind::Nu: return SurfaceFormula::binder(SKind::Nu, f.name(), toSurface(f.body()));
  }
  return SurfaceFormula::top();  // unreachable
}

}  // namespace topomu
