#pragma once

// Core mu-calculus formulas: Top, Var, Neg, And, Dia, Nu. The greatest
// fixpoint is primitive; everything else is sugar handled in surface.hpp.
//
// Formulas are immutable shared trees. Alpha-normal form means bound
// variables are pairwise distinct and distinct from every free variable of
// the whole formula; normalize() and substitute() maintain it.

#include <cassert>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "topomu/errors.hpp"

namespace topomu {

enum class Kind : uint8_t { Top, Var, Neg, And, Dia, Nu };

class Formula {
 public:
  Formula() = default;

  Kind kind() const { return node_->kind; }
  const std::string& name() const { return node_->name; }  // Var / Nu binder
  Formula child() const { return Formula(node_->left); }   // Neg / Dia
  Formula left() const { return Formula(node_->left); }
  Formula right() const { return Formula(node_->right); }
  Formula body() const { return Formula(node_->right); }  // Nu
  int size() const { return node_->size; }
  size_t hash() const { return node_->hash; }
  bool valid() const { return node_ != nullptr; }

  static Formula top() {
    static Formula t = make(Kind::Top, "", nullptr, nullptr);
    return t;
  }
  static Formula var(std::string name) {
    return make(Kind::Var, std::move(name), nullptr, nullptr);
  }
  static Formula neg(const Formula& f) { return make(Kind::Neg, "", f.node_, nullptr); }
  static Formula conj(const Formula& l, const Formula& r) {
    return make(Kind::And, "", l.node_, r.node_);
  }
  static Formula dia(const Formula& f) { return make(Kind::Dia, "", f.node_, nullptr); }
  static Formula nu(std::string v, const Formula& body) {
    return make(Kind::Nu, std::move(v), nullptr, body.node_);
  }

  // Derived core encodings. These fix the canonical shapes the rest of the
  // library pattern-matches on (implication in proofs, <*> in closure sets).
  static Formula bot() { return neg(top()); }
  static Formula disj(const Formula& l, const Formula& r) { return neg(conj(neg(l), neg(r))); }
  static Formula implies(const Formula& l, const Formula& r) { return neg(conj(l, neg(r))); }
  static Formula box(const Formula& f) { return neg(dia(neg(f))); }
  static Formula starDia(const Formula& f) { return disj(f, dia(f)); }  // <*>f = f | <>f
  static Formula starBox(const Formula& f) { return conj(f, box(f)); }  // [*]f = f & []f

  bool operator==(const Formula& o) const {
    if (node_ == o.node_) return true;
    if (!node_ || !o.node_) return false;
    if (node_->hash != o.node_->hash) return false;
    return equalNodes(node_.get(), o.node_.get());
  }
  bool operator!=(const Formula& o) const { return !(*this == o); }

  // Total order: by size, then kind, then name, then children. Used for
  // deterministic sets of formulas.
  int compare(const Formula& o) const { return compareNodes(node_.get(), o.node_.get()); }
  bool operator<(const Formula& o) const { return compare(o) < 0; }

 private:
  struct Node {
    Kind kind;
    std::string name;
    std::shared_ptr<const Node> left, right;
    int size;
    size_t hash;
  };

  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  static Formula make(Kind k, std::string name, std::shared_ptr<const Node> l,
                      std::shared_ptr<const Node> r) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->name = std::move(name);
    n->left = std::move(l);
    n->right = std::move(r);
    n->size = 1 + (n->left ? n->left->size : 0) + (n->right ? n->right->size : 0);
    size_t h = std::hash<int>{}(int(k)) * 31 + std::hash<std::string>{}(n->name);
    if (n->left) h = h * 1099511628211ULL ^ n->left->hash;
    if (n->right) h = h * 1099511628211ULL ^ n->right->hash;
    n->hash = h;
    return Formula(std::move(n));
  }

  static bool equalNodes(const Node* a, const Node* b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->hash != b->hash || a->kind != b->kind || a->name != b->name) return false;
    return equalNodes(a->left.get(), b->left.get()) && equalNodes(a->right.get(), b->right.get());
  }

  static int compareNodes(const Node* a, const Node* b) {
    if (a == b) return 0;
    if (!a || !b) return !a ? -1 : 1;
    if (a->size != b->size) return a->size < b->size ? -1 : 1;
    if (a->kind != b->kind) return a->kind < b->kind ? -1 : 1;
    if (a->name != b->name) return a->name < b->name ? -1 : 1;
    if (int c = compareNodes(a->left.get(), b->left.get())) return c;
    return compareNodes(a->right.get(), b->right.get());
  }

  std::shared_ptr<const Node> node_;
};

struct FormulaHash {
  size_t operator()(const Formula& f) const { return f.hash(); }
};

// ---------------------------------------------------------------------------
// Free variables, subformulas

inline void collectFreeVars(const Formula& f, std::set<std::string>& bound,
                            std::set<std::string>& out) {
  switch (f.kind()) {
    case Kind::Top:
      return;
    case Kind::Var:
      if (!bound.count(f.name())) out.insert(f.name());
      return;
    case Kind::Neg:
    case Kind::Dia:
      collectFreeVars(f.child(), bound, out);
      return;
    case Kind::And:
      collectFreeVars(f.left(), bound, out);
      collectFreeVars(f.right(), bound, out);
      return;
    case Kind::Nu: {
      bool inserted = bound.insert(f.name()).second;
      collectFreeVars(f.body(), bound, out);
      if (inserted) bound.erase(f.name());
      return;
    }
  }
}

inline std::set<std::string> freeVars(const Formula& f) {
  std::set<std::string> bound, out;
  collectFreeVars(f, bound, out);
  return out;
}

// Sub(f), including f itself. Deterministic order (post-order, first
// occurrence wins).
inline std::vector<Formula> subformulas(const Formula& f) {
  std::vector<Formula> out;
  std::function<void(const Formula&)> go = [&](const Formula& g) {
    switch (g.kind()) {
      case Kind::Top:
      case Kind::Var:
        break;
      case Kind::Neg:
      case Kind::Dia:
        go(g.child());
        break;
      case Kind::And:
        go(g.left());
        go(g.right());
        break;
      case Kind::Nu:
        go(g.body());
        break;
    }
    for (const auto& h : out)
      if (h == g) return;
    out.push_back(g);
  };
  go(f);
  return out;
}

// ---------------------------------------------------------------------------
// Alpha-normalization

// Smallest unused name with the given base: base, base_1, base_2, ...
inline std::string freshName(const std::string& base, std::set<std::string>& used) {
  if (used.insert(base).second) return base;
  for (int k = 1;; ++k) {
    std::string cand = base + "_" + std::to_string(k);
    if (used.insert(cand).second) return cand;
  }
}

namespace detail {
inline Formula alphaRename(const Formula& f, std::map<std::string, std::string>& env,
                           std::set<std::string>& used) {
  switch (f.kind()) {
    case Kind::Top:
      return f;
    case Kind::Var: {
      auto it = env.find(f.name());
      return it == env.end() ? f : Formula::var(it->second);
    }
    case Kind::Neg:
      return Formula::neg(alphaRename(f.child(), env, used));
    case Kind::Dia:
      return Formula::dia(alphaRename(f.child(), env, used));
    case Kind::And: {
      Formula l = alphaRename(f.left(), env, used);
      return Formula::conj(l, alphaRename(f.right(), env, used));
    }
    case Kind::Nu: {
      std::string nn = freshName(f.name(), used);
      auto it = env.find(f.name());
      std::string saved;
      bool had = it != env.end();
      if (had) saved = it->second;
      env[f.name()] = nn;
      Formula b = alphaRename(f.body(), env, used);
      if (had)
        env[f.name()] = saved;
      else
        env.erase(f.name());
      return Formula::nu(nn, b);
    }
  }
  return f;  // unreachable
}
}  // namespace detail

// Renames binders so bound variables are pairwise distinct and distinct from
// every free variable. Keeps original names when possible; deterministic.
inline Formula alphaNormalize(const Formula& f) {
  std::set<std::string> used = freeVars(f);
  std::map<std::string, std::string> env;
  return detail::alphaRename(f, env, used);
}

inline bool isAlphaNormal(const Formula& f) {
  std::set<std::string> fv = freeVars(f), bound;
  bool ok = true;
  std::function<void(const Formula&)> go = [&](const Formula& g) {
    if (!ok) return;
    switch (g.kind()) {
      case Kind::Top:
      case Kind::Var:
        return;
      case Kind::Neg:
      case Kind::Dia:
        go(g.child());
        return;
      case Kind::And:
        go(g.left());
        go(g.right());
        return;
      case Kind::Nu:
        if (fv.count(g.name()) || !bound.insert(g.name()).second) ok = false;
        go(g.body());
        return;
    }
  };
  go(f);
  return ok;
}

// Alpha-equality: equal after consistent binder renaming.
inline bool alphaEqual(const Formula& a, const Formula& b) {
  std::function<bool(const Formula&, const Formula&, std::vector<std::string>&,
                     std::vector<std::string>&)>
      go = [&](const Formula& x, const Formula& y, std::vector<std::string>& bx,
               std::vector<std::string>& by) -> bool {
    if (x.kind() != y.kind()) return false;
    switch (x.kind()) {
      case Kind::Top:
        return true;
      case Kind::Var: {
        for (int i = int(bx.size()) - 1; i >= 0; --i) {
          bool mx = bx[i] == x.name(), my = by[i] == y.name();
          if (mx || my) return mx && my;
        }
        return x.name() == y.name();
      }
      case Kind::Neg:
      case Kind::Dia:
        return go(x.child(), y.child(), bx, by);
      case Kind::And:
        return go(x.left(), y.left(), bx, by) && go(x.right(), y.right(), bx, by);
      case Kind::Nu: {
        bx.push_back(x.name());
        by.push_back(y.name());
        bool r = go(x.body(), y.body(), bx, by);
        bx.pop_back();
        by.pop_back();
        return r;
      }
    }
    return false;
  };
  std::vector<std::string> bx, by;
  return go(a, b, bx, by);
}

// ---------------------------------------------------------------------------
// Positivity

// Throws NotPositiveError if some Nu-bound variable occurs under an odd
// number of negations on some path.
inline void checkPositivity(const Formula& f) {
  // parity per currently-bound variable: true = even context
  std::function<void(const Formula&, std::map<std::string, bool>&,
                     std::vector<std::string>&)>
      go = [&](const Formula& g, std::map<std::string, bool>& parity,
               std::vector<std::string>& path) {
        switch (g.kind()) {
          case Kind::Top:
            return;
          case Kind::Var: {
            auto it = parity.find(g.name());
            if (it != parity.end() && !it->second) {
              path.push_back(g.name());
              throw NotPositiveError(g.name(), path);
            }
            return;
          }
          case Kind::Neg: {
            for (auto& [v, pp] : parity) pp = !pp;
            path.push_back("~");
            go(g.child(), parity, path);
            path.pop_back();
            for (auto& [v, pp] : parity) pp = !pp;
            return;
          }
          case Kind::Dia:
            path.push_back("<>");
            go(g.child(), parity, path);
            path.pop_back();
            return;
          case Kind::And:
            path.push_back("&L");
            go(g.left(), parity, path);
            path.pop_back();
            path.push_back("&R");
            go(g.right(), parity, path);
            path.pop_back();
            return;
          case Kind::Nu: {
            auto saved = parity;
            parity[g.name()] = true;
            path.push_back("nu " + g.name());
            go(g.body(), parity, path);
            path.pop_back();
            parity = saved;
            return;
          }
        }
      };
  std::map<std::string, bool> parity;
  std::vector<std::string> path;
  go(f, parity, path);
}

inline bool isPositiveIn(const Formula& f, const std::string& x) {
  std::function<bool(const Formula&, bool)> go = [&](const Formula& g, bool even) -> bool {
    switch (g.kind()) {
      case Kind::Top:
        return true;
      case Kind::Var:
        return g.name() != x || even;
      case Kind::Neg:
        return go(g.child(), !even);
      case Kind::Dia:
        return go(g.child(), even);
      case Kind::And:
        return go(g.left(), even) && go(g.right(), even);
      case Kind::Nu:
        return g.name() == x ? true : go(g.body(), even);
    }
    return true;
  };
  return go(f, true);
}

// ---------------------------------------------------------------------------
// Substitution

namespace detail {
struct SubstState {
  const std::map<std::string, Formula>& binding;
  std::set<std::string> captureRisk;  // free vars of all binding values
  std::map<std::string, std::string> renames;
  std::map<std::string, int> activeTargets;  // rename targets on the current path
  std::set<std::string> used;
};

inline Formula substRaw(const Formula& f, SubstState& st) {
  switch (f.kind()) {
    case Kind::Top:
      return f;
    case Kind::Var: {
      auto rn = st.renames.find(f.name());
      if (rn != st.renames.end()) return Formula::var(rn->second);
      auto it = st.binding.find(f.name());
      return it == st.binding.end() ? f : it->second;
    }
    case Kind::Neg:
      return Formula::neg(substRaw(f.child(), st));
    case Kind::Dia:
      return Formula::dia(substRaw(f.child(), st));
    case Kind::And: {
      Formula l = substRaw(f.left(), st);
      return Formula::conj(l, substRaw(f.right(), st));
    }
    case Kind::Nu: {
      // The binder shadows its name. Rename only when keeping it could
      // capture: a substituted value with the name free, or an outer binder
      // already renamed onto this name.
      bool risky = st.captureRisk.count(f.name()) || st.activeTargets.count(f.name());
      std::string nn = f.name();
      if (risky)
        nn = freshName(f.name(), st.used);
      else
        st.used.insert(nn);
      auto it = st.renames.find(f.name());
      std::string saved;
      bool had = it != st.renames.end();
      if (had) saved = it->second;
      st.renames[f.name()] = nn;
      ++st.activeTargets[nn];
      Formula b = substRaw(f.body(), st);
      if (--st.activeTargets[nn] == 0) st.activeTargets.erase(nn);
      if (had)
        st.renames[f.name()] = saved;
      else
        st.renames.erase(f.name());
      return Formula::nu(nn, b);
    }
  }
  return f;  // unreachable
}
}  // namespace detail

// Capture-avoiding simultaneous substitution of free occurrences; the result
// is re-alpha-normalized (a substituted formula may be inserted at several
// sites, duplicating its binders).
inline Formula substitute(const Formula& f, const std::map<std::string, Formula>& binding) {
  detail::SubstState st{binding, {}, {}, {}, {}};
  for (const auto& [k, v] : binding) {
    auto fv = freeVars(v);
    st.captureRisk.insert(fv.begin(), fv.end());
    st.used.insert(fv.begin(), fv.end());
    st.used.insert(k);
  }
  auto fv = freeVars(f);
  st.used.insert(fv.begin(), fv.end());
  Formula raw = detail::substRaw(f, st);
  return alphaNormalize(raw);
}

inline Formula substitute(const Formula& f, const std::string& x, const Formula& value) {
  return substitute(f, std::map<std::string, Formula>{{x, value}});
}

// ---------------------------------------------------------------------------
// Canonical pretty-printer (core grammar: T, names, ~, &, <>, nu V.)

namespace detail {
// precedence: binder 0 < & 4 < unary 5; atoms need no parens
inline void printCore(const Formula& f, int parentPrec, std::string& out) {
  switch (f.kind()) {
    case Kind::Top:
      out += "T";
      return;
    case Kind::Var:
      out += f.name();
      return;
    case Kind::Neg:
    case Kind::Dia: {
      out += f.kind() == Kind::Neg ? "~" : "<>";
      printCore(f.child(), 5, out);
      return;
    }
    case Kind::And: {
      bool paren = parentPrec > 4;
      if (paren) out += "(";
      printCore(f.left(), 4, out);  // left-associative
      out += " & ";
      printCore(f.right(), 5, out);
      if (paren) out += ")";
      return;
    }
    case Kind::Nu: {
      bool paren = parentPrec > 0;
      if (paren) out += "(";
      out += "nu " + f.name() + ". ";
      printCore(f.body(), 0, out);
      if (paren) out += ")";
      return;
    }
  }
}
}  // namespace detail

inline std::string print(const Formula& f) {
  std::string out;
  detail::printCore(f, 0, out);
  return out;
}

}  // namespace topomu
