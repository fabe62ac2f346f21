#pragma once

// The frame-to-space construction: over a weakly transitive base frame, the
// space has points (w, n) for every level n when w is reflexive and the
// single point (w, omega) when w is irreflexive; pi projects to the world.
// A set U is open iff for each member (w, a): (1) some level threshold n
// admits every same-cluster point at level >= n, and (2) every point over a
// strict successor of w belongs to U.
//
// The space is infinite, so opens are symbolic (unions of basic regions
// minus a finite exception set) and verification is sampled: the projection
// is a d-morphism, the space is T0 over weakly reflexive bases and TD over
// transitive bases.

#include <optional>
#include <string>
#include <vector>

#include "topomu/errors.hpp"
#include "topomu/frame.hpp"
#include "topomu/rng.hpp"

namespace topomu {

struct LazyPoint {
  int world = 0;
  std::optional<uint64_t> level;  // nullopt plays omega (irreflexive worlds)

  bool operator==(const LazyPoint& o) const { return world == o.world && level == o.level; }
  bool levelAtLeast(uint64_t n) const { return !level || *level >= n; }

  std::string toString() const {
    return "(" + std::to_string(world) + "," + (level ? std::to_string(*level) : "w") + ")";
  }
};

class LazyFrameSpace {
 public:
  const Frame& base() const { return base_; }
  bool reflexive(int w) const { return base_.hasEdge(w, w); }
  bool sameCluster(int w, int v) const {
    return w == v || (base_.hasEdge(w, v) && base_.hasEdge(v, w));
  }
  bool strictlyBelow(int w, int v) const { return strictEdge(base_, w, v); }  // w strictly sees v

  bool validPoint(const LazyPoint& p) const {
    if (p.world < 0 || p.world >= base_.worldCount()) return false;
    return p.level ? reflexive(p.world) : !reflexive(p.world);
  }

  LazyPoint samplePoint(Rng& rng, uint64_t levelCap) const {
    int w = int(rng.below(uint64_t(base_.worldCount())));
    if (reflexive(w)) return {w, rng.below(levelCap + 1)};
    return {w, std::nullopt};
  }

 private:
  friend LazyFrameSpace buildLazySpace(const Frame&);
  Frame base_;
};

inline LazyFrameSpace buildLazySpace(const Frame& f) {
  if (!isWeaklyTransitive(f)) throw NotWeaklyTransitiveError();
  LazyFrameSpace ls;
  ls.base_ = f;
  return ls;
}

// ---------------------------------------------------------------------------
// Symbolic opens

// B(w, n) = {(v, b) : v in cluster(w), b >= n} ∪ {(v, b) : w strictly sees v}
struct BasicRegion {
  int world = 0;
  uint64_t minLevel = 0;
};

struct SymbolicOpen {
  const LazyFrameSpace* space = nullptr;
  std::vector<BasicRegion> regions;
  std::vector<LazyPoint> exceptions;  // removed points; must not break openness

  bool contains(const LazyPoint& p) const {
    for (const auto& e : exceptions)
      if (e == p) return false;
    for (const auto& r : regions) {
      if (space->sameCluster(r.world, p.world) && p.levelAtLeast(r.minLevel)) return true;
      if (space->strictlyBelow(r.world, p.world)) return true;
    }
    return false;
  }
};

inline SymbolicOpen basicOpen(const LazyFrameSpace& ls, int world, uint64_t minLevel = 0) {
  return {&ls, {{world, minLevel}}, {}};
}

// ---------------------------------------------------------------------------
// Openness conditions, checked at one member

namespace detail {

// Largest finite level in play: exception levels and region thresholds.
inline uint64_t levelHorizon(const SymbolicOpen& u) {
  uint64_t h = 0;
  for (const auto& e : u.exceptions)
    if (e.level) h = std::max(h, *e.level);
  for (const auto& r : u.regions) h = std::max(h, r.minLevel);
  return h;
}

// Condition (1): some threshold n admits the whole cluster tail of p.
inline std::optional<std::string> conditionOneViolation(const SymbolicOpen& u,
                                                        const LazyPoint& p,
                                                        uint64_t levelCap) {
  const LazyFrameSpace& ls = *u.space;
  uint64_t n = levelHorizon(u) + 1;
  int base = ls.base().worldCount();
  for (int v = 0; v < base; ++v) {
    if (!(v != p.world ? ls.base().hasEdge(p.world, v) && ls.base().hasEdge(v, p.world)
                       : ls.reflexive(v)))
      continue;  // condition ranges over v <-> w
    if (ls.reflexive(v)) {
      for (uint64_t b : {n, n + 1, n + levelCap})
        if (!u.contains({v, b}))
          return "condition (1) fails at " + p.toString() + ": cluster point (" +
                 std::to_string(v) + "," + std::to_string(b) + ") missing";
    } else {
      if (!u.contains({v, std::nullopt}))
        return "condition (1) fails at " + p.toString() + ": cluster point (" +
               std::to_string(v) + ",w) missing";
    }
  }
  return std::nullopt;
}

// Condition (2): all points over strict successors of p's world are inside.
inline std::optional<std::string> conditionTwoViolation(const SymbolicOpen& u,
                                                        const LazyPoint& p,
                                                        uint64_t levelCap) {
  const LazyFrameSpace& ls = *u.space;
  int base = ls.base().worldCount();
  uint64_t horizon = levelHorizon(u) + 1;
  for (int v = 0; v < base; ++v) {
    if (!ls.strictlyBelow(p.world, v)) continue;
    if (ls.reflexive(v)) {
      for (uint64_t b : {uint64_t{0}, uint64_t{1}, horizon, horizon + levelCap})
        if (!u.contains({v, b}))
          return "condition (2) fails at " + p.toString() + ": successor point (" +
                 std::to_string(v) + "," + std::to_string(b) + ") missing";
    } else {
      if (!u.contains({v, std::nullopt}))
        return "condition (2) fails at " + p.toString() + ": successor point (" +
               std::to_string(v) + ",w) missing";
    }
  }
  return std::nullopt;
}

inline std::optional<std::string> opennessViolation(const SymbolicOpen& u, const LazyPoint& p,
                                                    uint64_t levelCap) {
  if (!u.contains(p)) return std::nullopt;  // conditions only bind at members
  if (auto v = conditionOneViolation(u, p, levelCap)) return v;
  return conditionTwoViolation(u, p, levelCap);
}

}  // namespace detail

// Validates a constructed open at one point (used by tests and lazyVerify).
inline bool symbolicOpenValidAt(const SymbolicOpen& u, const LazyPoint& p,
                                uint64_t levelCap = 64) {
  return !detail::opennessViolation(u, p, levelCap).has_value();
}

// ---------------------------------------------------------------------------
// Sampled verification

struct LazyVerifyReport {
  int samples = 0;
  bool t0Attempted = false;  // base is weakly reflexive (wK4T0)
  bool tdAttempted = false;  // base is transitive (K4)
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

namespace detail {

// Forth: the punctured witness open around p projects into p.world-up.
inline void checkForth(const LazyFrameSpace& ls, const LazyPoint& p, uint64_t levelCap,
                       LazyVerifyReport& report) {
  SymbolicOpen o = basicOpen(ls, p.world, 0);
  if (!o.contains(p)) {
    report.violations.push_back("witness open misses its center " + p.toString());
    return;
  }
  if (auto v = opennessViolation(o, p, levelCap)) report.violations.push_back(*v);
  // exact image of O minus {p}: cluster worlds (minus p.world when it has a
  // single point) plus strict successors
  int n = ls.base().worldCount();
  const WorldSet& up = ls.base().successors(p.world);
  for (int v = 0; v < n; ++v) {
    bool inImage = false;
    if (ls.sameCluster(p.world, v))
      inImage = v != p.world || ls.reflexive(p.world);  // another copy exists
    if (ls.strictlyBelow(p.world, v)) inImage = true;
    if (inImage && !up.contains(v))
      report.violations.push_back("forth fails at " + p.toString() + ": image world " +
                                  std::to_string(v) + " is not a successor");
  }
}

// Back: every successor of p.world is hit by U minus {p}, for sampled basic
// neighborhoods U of p.
inline void checkBack(const LazyFrameSpace& ls, const LazyPoint& p, Rng& rng, uint64_t levelCap,
                      LazyVerifyReport& report) {
  for (uint64_t nIdx = 0; nIdx < 3; ++nIdx) {
    uint64_t minLevel = rng.below(levelCap + 1);
    if (p.level && *p.level < minLevel) minLevel = *p.level;  // keep p inside U
    SymbolicOpen u = basicOpen(ls, p.world, minLevel);
    ls.base().successors(p.world).forEach([&](int v) {
      bool hit = false;
      if (ls.reflexive(v)) {
        for (uint64_t b : {minLevel, minLevel + 1, minLevel + 2})
          if (!(LazyPoint{v, b} == p) && u.contains({v, b})) hit = true;
      } else if (!(LazyPoint{v, std::nullopt} == p) && u.contains({v, std::nullopt})) {
        hit = true;
      }
      if (!hit)
        report.violations.push_back("back fails at " + p.toString() + ": successor " +
                                    std::to_string(v) + " not covered by U - {point}");
    });
  }
}

// T0: construct a separating open for a sampled pair, per the base-case
// analysis (different cones, or same cluster with one finite level).
inline void checkT0(const LazyFrameSpace& ls, const LazyPoint& a, const LazyPoint& b,
                    uint64_t levelCap, LazyVerifyReport& report) {
  if (a == b) return;
  auto separate = [&](const LazyPoint& inside, const LazyPoint& outside, SymbolicOpen u) {
    if (!u.contains(inside))
      report.violations.push_back("T0 open misses " + inside.toString());
    if (u.contains(outside))
      report.violations.push_back("T0 open fails to exclude " + outside.toString());
    if (auto v = opennessViolation(u, inside, levelCap)) report.violations.push_back(*v);
  };
  bool aSeesB = a.world == b.world || ls.base().hasEdge(a.world, b.world);
  bool bSeesA = a.world == b.world || ls.base().hasEdge(b.world, a.world);
  if (!aSeesB) {
    separate(a, b, basicOpen(ls, a.world, 0));
  } else if (!bSeesA) {
    separate(b, a, basicOpen(ls, b.world, 0));
  } else if (b.level) {
    SymbolicOpen u = basicOpen(ls, a.world, 0);
    u.exceptions.push_back(b);
    separate(a, b, u);
  } else if (a.level) {
    SymbolicOpen u = basicOpen(ls, b.world, 0);
    u.exceptions.push_back(a);
    separate(b, a, u);
  } else {
    report.violations.push_back("T0 impossible pair (two omega points share a cluster): " +
                                a.toString() + " vs " + b.toString());
  }
}

// TD: U = B(w, 0) and F = closure of {p} = {p} ∪ (points over strict
// predecessors of w) intersect exactly in p; F's complement is open.
inline void checkTD(const LazyFrameSpace& ls, const LazyPoint& p, Rng& rng, uint64_t levelCap,
                    LazyVerifyReport& report) {
  SymbolicOpen u = basicOpen(ls, p.world, 0);
  auto inF = [&](const LazyPoint& q) {
    return q == p || ls.strictlyBelow(q.world, p.world);
  };
  if (!u.contains(p) || !inF(p)) {
    report.violations.push_back("TD witness does not contain its point " + p.toString());
    return;
  }
  // complement of F as a symbolic open: regions over worlds not strictly
  // below w, minus the point itself
  SymbolicOpen comp{&ls, {}, {p}};
  for (int v = 0; v < ls.base().worldCount(); ++v)
    if (!ls.strictlyBelow(v, p.world)) comp.regions.push_back({v, 0});

  for (int i = 0; i < 24; ++i) {
    LazyPoint q = ls.samplePoint(rng, levelCap);
    bool intersection = u.contains(q) && inF(q);
    if (intersection != (q == p))
      report.violations.push_back("TD fails: U ∩ F contains " + q.toString() +
                                  " besides " + p.toString());
    if (inF(q) == comp.contains(q))
      report.violations.push_back("TD complement open disagrees with F at " + q.toString());
    if (auto v = opennessViolation(comp, q, levelCap)) report.violations.push_back(*v);
  }
  if (auto v = opennessViolation(u, p, levelCap)) report.violations.push_back(*v);
}

}  // namespace detail

inline LazyVerifyReport lazyVerify(const LazyFrameSpace& ls, int sampleCount, uint64_t seed,
                                   uint64_t levelCap = 64) {
  Rng rng(seed);
  LazyVerifyReport report;
  report.samples = sampleCount;
  report.t0Attempted = checkFrameClass(ls.base(), FrameClass::WK4T0).ok;
  report.tdAttempted = checkFrameClass(ls.base(), FrameClass::K4).ok;
  for (int i = 0; i < sampleCount; ++i) {
    LazyPoint p = ls.samplePoint(rng, levelCap);
    detail::checkForth(ls, p, levelCap, report);
    detail::checkBack(ls, p, rng, levelCap, report);
    if (report.t0Attempted) detail::checkT0(ls, p, ls.samplePoint(rng, levelCap), levelCap, report);
    if (report.tdAttempted) detail::checkTD(ls, p, rng, levelCap, report);
  }
  return report;
}

}  // namespace topomu
