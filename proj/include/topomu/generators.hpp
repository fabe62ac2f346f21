#pragma once

// Seeded random frames, models and formulas. Frames are produced by
// sprinkling edges and then repairing into the requested class, so every
// draw lands in the class without rejection loops.

#include <string>
#include <vector>

#include "topomu/frame.hpp"
#include "topomu/rng.hpp"
#include "topomu/surface.hpp"

namespace topomu {

inline void weaklyTransitiveClosure(Frame& f) {
  int n = f.worldCount();
  bool changed = true;
  while (changed) {
    changed = false;
    for (int w = 0; w < n; ++w)
      for (int s : f.successors(w).toVector())
        for (int t : f.successors(s).toVector())
          if (w != t && !f.hasEdge(w, t)) {
            f.addEdge(w, t);
            changed = true;
          }
  }
}

inline void transitiveClosure(Frame& f) {
  int n = f.worldCount();
  bool changed = true;
  while (changed) {
    changed = false;
    for (int w = 0; w < n; ++w)
      for (int s : f.successors(w).toVector())
        for (int t : f.successors(s).toVector())
          if (!f.hasEdge(w, t)) {
            f.addEdge(w, t);
            changed = true;
          }
  }
}

// Repairs an arbitrary frame into the class (closure, loop surgery).
inline void repairIntoClass(Frame& f, FrameClass c) {
  int n = f.worldCount();
  switch (c) {
    case FrameClass::ALL:
      return;
    case FrameClass::WK4:
      weaklyTransitiveClosure(f);
      return;
    case FrameClass::K4:
      transitiveClosure(f);
      return;
    case FrameClass::S4:
      for (int w = 0; w < n; ++w) f.addEdge(w, w);
      transitiveClosure(f);
      return;
    case FrameClass::IRR_WK4:
      weaklyTransitiveClosure(f);
      // Dropping loops keeps weak transitivity: any w->s->t with w != t
      // already has its w->t edge, and that edge is not a loop.
      for (int w = 0; w < n; ++w) f.removeEdge(w, w);
      return;
    case FrameClass::WK4T0: {
      weaklyTransitiveClosure(f);
      // Each cluster may keep at most one irreflexive point; the least
      // irreflexive member stays, the rest get loops.
      for (int w = 0; w < n; ++w) {
        if (f.hasEdge(w, w)) continue;
        for (int v = 0; v < w; ++v)
          if (!f.hasEdge(v, v) && f.hasEdge(w, v) && f.hasEdge(v, w)) {
            f.addEdge(w, w);
            break;
          }
      }
      return;
    }
  }
}

inline Frame randomFrame(Rng& rng, int worlds, FrameClass c) {
  Frame f(worlds);
  double density = 0.1 + 0.5 * (double(rng.below(1000)) / 1000.0);
  for (int w = 0; w < worlds; ++w)
    for (int v = 0; v < worlds; ++v)
      if (rng.chance(density)) f.addEdge(w, v);
  repairIntoClass(f, c);
  return f;
}

inline Model randomModel(Rng& rng, int maxWorlds, FrameClass c,
                         const std::vector<std::string>& atoms) {
  int n = rng.intIn(1, maxWorlds);
  Model m;
  m.frame = randomFrame(rng, n, c);
  for (const auto& atom : atoms) {
    WorldSet s(n);
    for (int w = 0; w < n; ++w)
      if (rng.chance(0.5)) s.add(w);
    m.valuation[atom] = std::move(s);
  }
  return m;
}

// ---------------------------------------------------------------------------
// Random formulas. Bound fixpoint variables are only emitted in positive
// position, so normalize() never rejects a generated formula.

namespace detail {

inline SurfaceFormula genSurface(Rng& rng, int budget, const std::vector<std::string>& atoms,
                                 std::vector<std::pair<std::string, bool>>& bound,
                                 int binderDepth) {
  auto leaf = [&]() -> SurfaceFormula {
    std::vector<SurfaceFormula> options;
    options.push_back(SurfaceFormula::top());
    for (const auto& a : atoms) options.push_back(SurfaceFormula::var(a));
    for (const auto& [v, positive] : bound)
      if (positive) options.push_back(SurfaceFormula::var(v));
    return options[rng.below(options.size())];
  };
  if (budget <= 1) return leaf();
  switch (rng.below(10)) {
    case 0: {  // negation flips every parity
      for (auto& [v, p] : bound) p = !p;
      SurfaceFormula c = genSurface(rng, budget - 1, atoms, bound, binderDepth);
      for (auto& [v, p] : bound) p = !p;
      return SurfaceFormula::unary(SKind::Neg, std::move(c));
    }
    case 1:
      return SurfaceFormula::unary(SKind::Dia, genSurface(rng, budget - 1, atoms, bound, binderDepth));
    case 2:
      return SurfaceFormula::unary(SKind::Box, genSurface(rng, budget - 1, atoms, bound, binderDepth));
    case 3:
      return SurfaceFormula::unary(rng.chance(0.5) ? SKind::StarDia : SKind::StarBox,
                                   genSurface(rng, budget - 1, atoms, bound, binderDepth));
    case 4:
    case 5: {
      int lb = 1 + int(rng.below(uint64_t(budget - 1)));
      SurfaceFormula l = genSurface(rng, lb, atoms, bound, binderDepth);
      SurfaceFormula r = genSurface(rng, budget - 1 - lb, atoms, bound, binderDepth);
      return SurfaceFormula::binary(rng.chance(0.5) ? SKind::And : SKind::Or, std::move(l),
                                    std::move(r));
    }
    case 6: {  // implication: antecedent in flipped parity
      int lb = 1 + int(rng.below(uint64_t(budget - 1)));
      for (auto& [v, p] : bound) p = !p;
      SurfaceFormula l = genSurface(rng, lb, atoms, bound, binderDepth);
      for (auto& [v, p] : bound) p = !p;
      SurfaceFormula r = genSurface(rng, budget - 1 - lb, atoms, bound, binderDepth);
      return SurfaceFormula::binary(SKind::Implies, std::move(l), std::move(r));
    }
    case 7:
    case 8: {
      if (binderDepth >= 3) return leaf();
      std::string v = "X" + std::to_string(binderDepth) + "_" + std::to_string(rng.below(100));
      bound.emplace_back(v, true);
      SurfaceFormula body = genSurface(rng, budget - 1, atoms, bound, binderDepth + 1);
      bound.pop_back();
      return SurfaceFormula::binder(rng.chance(0.7) ? SKind::Nu : SKind::Mu, v, std::move(body));
    }
    default: {
      if (binderDepth >= 3 || budget < 3) return leaf();
      std::vector<SurfaceFormula> args;
      int k = rng.intIn(1, 2);
      for (int i = 0; i < k; ++i) {
        std::vector<std::pair<std::string, bool>> noBound;  // tangle args stay closed
        args.push_back(genSurface(rng, (budget - 1) / k, atoms, noBound, binderDepth + 1));
      }
      return SurfaceFormula::tangle(rng.chance(0.5) ? SKind::TangleD : SKind::TangleC,
                                    std::move(args));
    }
  }
}

}  // namespace detail

// Random core formula over the given atoms, alpha-normal and positive.
inline Formula randomFormula(Rng& rng, const std::vector<std::string>& atoms, int sizeBudget) {
  std::vector<std::pair<std::string, bool>> bound;
  return normalize(detail::genSurface(rng, sizeBudget, atoms, bound, 0));
}

// Random core formula positive in `hole`, for fixpoint bodies and schema
// instantiation.
inline Formula randomPositiveBody(Rng& rng, const std::string& hole,
                                  const std::vector<std::string>& atoms, int sizeBudget) {
  std::vector<std::pair<std::string, bool>> bound{{hole, true}};
  for (;;) {
    SurfaceFormula s = detail::genSurface(rng, sizeBudget, atoms, bound, 1);
    Formula f = normalize(s);
    if (isPositiveIn(f, hole)) return f;
  }
}

}  // namespace topomu
