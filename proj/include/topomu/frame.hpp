#pragma once

// Finite Kripke frames and models, frame-class checks, cluster/depth
// analysis, irreflexive unfolding and cofinality.
//
// A weakly transitive (wK4) frame satisfies: w->s->t implies w=t or w->t.
// Finite wK4 frames are exactly the finite derivative spaces, with
// d(X) = {w : some successor of w lies in X}.

#include <algorithm>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "topomu/errors.hpp"
#include "topomu/worldset.hpp"

namespace topomu {

class Frame {
 public:
  Frame() = default;
  explicit Frame(int worlds) : n_(worlds), succ_(worlds, WorldSet(worlds)) {}

  int worldCount() const { return n_; }
  bool hasEdge(int from, int to) const { return succ_[from].contains(to); }
  void addEdge(int from, int to) { succ_[from].add(to); }
  void removeEdge(int from, int to) { succ_[from].remove(to); }
  const WorldSet& successors(int w) const { return succ_[w]; }

  // w-up-star: {w} together with w's successors.
  WorldSet upStar(int w) const {
    WorldSet s = succ_[w];
    s.add(w);
    return s;
  }

  WorldSet predecessors(int w) const {
    WorldSet s(n_);
    for (int v = 0; v < n_; ++v)
      if (succ_[v].contains(w)) s.add(v);
    return s;
  }

  // Relational derivative d(X) = {w : succ(w) meets X}.
  WorldSet derivative(const WorldSet& x) const {
    WorldSet r(n_);
    for (int w = 0; w < n_; ++w)
      if (succ_[w].intersects(x)) r.add(w);
    return r;
  }

  bool operator==(const Frame& o) const { return n_ == o.n_ && succ_ == o.succ_; }

 private:
  int n_ = 0;
  std::vector<WorldSet> succ_;
};

struct Model {
  Frame frame;
  std::map<std::string, WorldSet> valuation;  // absent atoms denote the empty set

  int worldCount() const { return frame.worldCount(); }

  WorldSet atomSet(const std::string& name) const {
    auto it = valuation.find(name);
    return it == valuation.end() ? WorldSet(frame.worldCount()) : it->second;
  }
};

enum class FrameClass { WK4, WK4T0, K4, S4, IRR_WK4, ALL };

inline const char* frameClassName(FrameClass c) {
  switch (c) {
    case FrameClass::WK4: return "WK4";
    case FrameClass::WK4T0: return "WK4T0";
    case FrameClass::K4: return "K4";
    case FrameClass::S4: return "S4";
    case FrameClass::IRR_WK4: return "IRR_WK4";
    case FrameClass::ALL: return "ALL";
  }
  return "?";
}

struct ClassCheckResult {
  bool ok = true;
  std::vector<int> witness;  // offending world tuple (shortest applicable)
  std::string reason;
};

namespace detail {

inline ClassCheckResult checkWeaklyTransitive(const Frame& f) {
  int n = f.worldCount();
  for (int w = 0; w < n; ++w)
    for (int s : f.successors(w).toVector())
      for (int t : f.successors(s).toVector())
        if (w != t && !f.hasEdge(w, t))
          return {false, {w, s, t}, "weak transitivity fails"};
  return {};
}

inline ClassCheckResult checkTransitive(const Frame& f) {
  int n = f.worldCount();
  for (int w = 0; w < n; ++w)
    for (int s : f.successors(w).toVector())
      for (int t : f.successors(s).toVector())
        if (!f.hasEdge(w, t)) return {false, {w, s, t}, "transitivity fails"};
  return {};
}

// Weak reflexivity: w->v->w implies w->w or v->v.
inline ClassCheckResult checkWeaklyReflexive(const Frame& f) {
  int n = f.worldCount();
  for (int w = 0; w < n; ++w)
    for (int v = w + 1; v < n; ++v)
      if (f.hasEdge(w, v) && f.hasEdge(v, w) && !f.hasEdge(w, w) && !f.hasEdge(v, v))
        return {false, {w, v}, "cluster with two irreflexive points"};
  return {};
}

}  // namespace detail

// Exact decision; on failure the witness is the shortest applicable tuple
// (1 for a reflexivity defect, 2 for weak reflexivity, 3 for transitivity).
inline ClassCheckResult checkFrameClass(const Frame& f, FrameClass c) {
  int n = f.worldCount();
  switch (c) {
    case FrameClass::ALL:
      return {};
    case FrameClass::WK4:
      return detail::checkWeaklyTransitive(f);
    case FrameClass::WK4T0: {
      auto wr = detail::checkWeaklyReflexive(f);
      if (!wr.ok) return wr;
      return detail::checkWeaklyTransitive(f);
    }
    case FrameClass::K4:
      return detail::checkTransitive(f);
    case FrameClass::S4: {
      for (int w = 0; w < n; ++w)
        if (!f.hasEdge(w, w)) return {false, {w}, "irreflexive point"};
      return detail::checkTransitive(f);
    }
    case FrameClass::IRR_WK4: {
      for (int w = 0; w < n; ++w)
        if (f.hasEdge(w, w)) return {false, {w}, "reflexive point"};
      return detail::checkWeaklyTransitive(f);
    }
  }
  return {};
}

inline bool isWeaklyTransitive(const Frame& f) { return checkFrameClass(f, FrameClass::WK4).ok; }

// ---------------------------------------------------------------------------
// Clusters and depth (wK4 only)

struct Partition {
  std::vector<int> block_of;     // world -> block id
  std::vector<WorldSet> blocks;  // ids dense, ordered by least member

  int blockCount() const { return int(blocks.size()); }
};

// Builds a partition from an equivalence keyed by arbitrary labels,
// renumbering blocks by least member index.
inline Partition partitionFromLabels(const std::vector<int>& labels, int n) {
  Partition p;
  p.block_of.assign(n, -1);
  std::map<int, int> renumber;
  for (int w = 0; w < n; ++w) {
    auto [it, fresh] = renumber.try_emplace(labels[w], int(renumber.size()));
    if (fresh) p.blocks.emplace_back(n);
    p.block_of[w] = it->second;
    p.blocks[it->second].add(w);
  }
  return p;
}

struct FrameAnalysis {
  Partition clusters;          // the <->*-classes
  std::vector<int> depth;      // supremum of strict-chain lengths from w
  int frameDepth = 0;
};

// Strict part of the relation: w -> v but not v -> w.
inline bool strictEdge(const Frame& f, int w, int v) {
  return f.hasEdge(w, v) && !f.hasEdge(v, w);
}

// Requires weak transitivity (the depth lemma presupposes it).
inline FrameAnalysis analyze(const Frame& f) {
  auto ok = detail::checkWeaklyTransitive(f);
  if (!ok.ok) throw NotWeaklyTransitiveError();
  int n = f.worldCount();

  std::vector<int> label(n);
  for (int w = 0; w < n; ++w) {
    label[w] = w;
    for (int v = 0; v < w; ++v)
      if (f.hasEdge(w, v) && f.hasEdge(v, w)) {
        label[w] = label[v];
        break;
      }
  }
  FrameAnalysis a;
  a.clusters = partitionFromLabels(label, n);

  // In a finite wK4 frame the strict part is a strict partial order, so the
  // longest-path recursion terminates.
  a.depth.assign(n, -1);
  std::function<int(int)> dpt = [&](int w) -> int {
    if (a.depth[w] >= 0) return a.depth[w];
    a.depth[w] = 0;  // cycle-safe placeholder; strict part is acyclic anyway
    int best = 0;
    f.successors(w).forEach([&](int v) {
      if (strictEdge(f, w, v)) best = std::max(best, 1 + dpt(v));
    });
    return a.depth[w] = best;
  };
  for (int w = 0; w < n; ++w) dpt(w);
  for (int w = 0; w < n; ++w) a.frameDepth = std::max(a.frameDepth, a.depth[w]);
  return a;
}

// ---------------------------------------------------------------------------
// Irreflexive unfolding

struct UnfoldResult {
  Model model;
  std::vector<int> projection;  // new world -> old world
};

// Doubles every reflexive point into a loopless two-point cluster; the
// projection is a P-morphism, so the unfolding satisfies the same formulas.
// New worlds keep old order: irreflexive w maps to one world, reflexive w to
// two consecutive ones.
inline UnfoldResult irreflexiveUnfold(const Model& m) {
  if (!isWeaklyTransitive(m.frame)) throw NotWeaklyTransitiveError();
  int n = m.worldCount();
  std::vector<int> projection;
  for (int w = 0; w < n; ++w) {
    projection.push_back(w);
    if (m.frame.hasEdge(w, w)) projection.push_back(w);
  }
  int nn = int(projection.size());
  Frame frame(nn);
  for (int a = 0; a < nn; ++a)
    for (int b = 0; b < nn; ++b)
      if (a != b && m.frame.hasEdge(projection[a], projection[b])) frame.addEdge(a, b);
  Model out;
  out.frame = std::move(frame);
  for (const auto& [atom, worlds] : m.valuation) {
    WorldSet s(nn);
    for (int a = 0; a < nn; ++a)
      if (worlds.contains(projection[a])) s.add(a);
    out.valuation[atom] = std::move(s);
  }
  return {std::move(out), std::move(projection)};
}

// ---------------------------------------------------------------------------
// Cofinality: X is cofinal iff every one-step successor of X can reach back
// into X along the reflexive closure.

inline bool isCofinal(const Frame& f, const WorldSet& x) {
  int n = f.worldCount();
  WorldSet up(n);  // X-up: one-step successors of X
  x.forEach([&](int w) { up |= f.successors(w); });
  WorldSet downStar = x | f.derivative(x);  // X ∪ {w : w -> some member}
  return up.subsetOf(downStar);
}

}  // namespace topomu
