#pragma once

// Extended valuation (model checking) over finite derivative models.
// Greatest fixpoints by downward Kleene iteration from the full world set;
// on a finite model the chain stabilizes in at most |W|+1 steps.

#include <map>
#include <string>
#include <vector>

#include "topomu/errors.hpp"
#include "topomu/formula.hpp"
#include "topomu/frame.hpp"
#include "topomu/worldset.hpp"

namespace topomu {

// Environments shadow the model valuation on name collision.
using Environment = std::map<std::string, WorldSet>;

namespace detail {

inline WorldSet lookupName(const Model& m, const Environment& env, const std::string& name) {
  auto it = env.find(name);
  if (it != env.end()) return it->second;
  auto vt = m.valuation.find(name);
  if (vt != m.valuation.end()) return vt->second;
  // Absent lowercase atoms denote the empty set; an unbound binder-style
  // variable is a caller error.
  if (!name.empty() && name[0] >= 'a' && name[0] <= 'z') return WorldSet(m.worldCount());
  throw UnboundVariableError(name);
}

}  // namespace detail

inline WorldSet evaluate(const Model& m, const Formula& f, const Environment& env = {}) {
  switch (f.kind()) {
    case Kind::Top:
      return WorldSet::full(m.worldCount());
    case Kind::Var:
      return detail::lookupName(m, env, f.name());
    case Kind::Neg:
      return evaluate(m, f.child(), env).complement();
    case Kind::And:
      return evaluate(m, f.left(), env) & evaluate(m, f.right(), env);
    case Kind::Dia:
      return m.frame.derivative(evaluate(m, f.child(), env));
    case Kind::Nu: {
      WorldSet cur = WorldSet::full(m.worldCount());
      Environment inner = env;
      for (;;) {
        inner[f.name()] = cur;
        WorldSet next = evaluate(m, f.body(), inner);
        next &= cur;  // the body is monotone; keep the chain decreasing regardless
        if (next == cur) return cur;
        cur = std::move(next);
      }
    }
  }
  return WorldSet(m.worldCount());  // unreachable
}

// Trace of the downward iteration for a Nu-rooted formula: stage 0 is the
// full world set, each stage applies the body, and the final two entries are
// equal. stabilization is the index of the first repeated entry.
struct EvalTrace {
  std::vector<WorldSet> stages;
  int stabilization = 0;
};

inline EvalTrace gfpTrace(const Model& m, const Formula& f, const Environment& env = {}) {
  if (f.kind() != Kind::Nu) throw InvalidInputError("gfpTrace requires a nu-rooted formula");
  EvalTrace trace;
  WorldSet cur = WorldSet::full(m.worldCount());
  trace.stages.push_back(cur);
  Environment inner = env;
  for (;;) {
    inner[f.name()] = cur;
    WorldSet next = evaluate(m, f.body(), inner);
    next &= cur;
    trace.stages.push_back(next);
    if (next == cur) {
      trace.stabilization = int(trace.stages.size()) - 2;
      return trace;
    }
    cur = std::move(next);
  }
}

// d-neighborhoods of a world: U is a d-neighborhood of x iff x-up is
// contained in U; the minimal one is x-up itself.
struct DNeighborhoods {
  WorldSet minimal;
  bool contains(const WorldSet& u) const { return minimal.subsetOf(u); }
};

inline DNeighborhoods dNeighborhoods(const Model& m, int world) {
  return {m.frame.successors(world)};
}

// Closure and interior induced by the relational derivative:
// c(X) = X ∪ d(X), i = complement ∘ c ∘ complement.
inline WorldSet relationalClosure(const Frame& f, const WorldSet& x) {
  return x | f.derivative(x);
}

inline WorldSet relationalInterior(const Frame& f, const WorldSet& x) {
  return relationalClosure(f, x.complement()).complement();
}

}  // namespace topomu
