#pragma once

// P-morphisms, (P- and Sigma-) bisimilarity by partition refinement, and
// quotient models.
//
// A P-morphism between finite relational models is a map pi with
// pi^{-1} d'(X') = d pi^{-1}(X') for all X' plus the atomic preimage
// condition on P. Both sides are unions over singletons (d is normal and
// preimage distributes over union), so checking singletons X' = {y} decides
// the full equation.

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "topomu/closure.hpp"
#include "topomu/errors.hpp"
#include "topomu/frame.hpp"
#include "topomu/semantics.hpp"

namespace topomu {

using WorldMap = std::vector<int>;  // source world -> target world, total

struct MorphismCheck {
  bool ok = true;
  std::string reason;
  int sourceWorld = -1;
  int targetWorld = -1;
  std::string atom;
};

inline MorphismCheck checkPMorphism(const WorldMap& pi, const Model& source,
                                    const Model& target,
                                    const std::set<std::string>& atoms) {
  int n = source.worldCount();
  int nt = target.worldCount();
  for (int w = 0; w < n; ++w)
    if (pi[w] < 0 || pi[w] >= nt)
      return {false, "map image out of range", w, pi[w], ""};

  for (int y = 0; y < nt; ++y) {
    // lhs = pi^{-1} d'({y}), rhs = d pi^{-1}({y})
    WorldSet target_d = target.frame.predecessors(y);
    WorldSet preimage(n);
    for (int w = 0; w < n; ++w)
      if (pi[w] == y) preimage.add(w);
    WorldSet lhs(n);
    for (int w = 0; w < n; ++w)
      if (target_d.contains(pi[w])) lhs.add(w);
    WorldSet rhs = source.frame.derivative(preimage);
    if (lhs != rhs) {
      WorldSet diff = (lhs - rhs) | (rhs - lhs);
      int w = diff.first();
      return {false,
              lhs.contains(w) ? "back condition fails (no matching successor)"
                              : "forth condition fails (image misses an edge)",
              w, y, ""};
    }
  }

  for (const auto& atom : atoms) {
    WorldSet src = source.atomSet(atom);
    WorldSet tgt = target.atomSet(atom);
    for (int w = 0; w < n; ++w)
      if (src.contains(w) != tgt.contains(pi[w]))
        return {false, "atomic preimage condition fails", w, pi[w], atom};
  }
  return {};
}

// ---------------------------------------------------------------------------
// Bisimilarity via partition refinement

class BisimMode {
 public:
  static BisimMode atoms(std::set<std::string> p) {
    BisimMode m;
    m.atoms_ = std::move(p);
    return m;
  }
  static BisimMode sigma(const SigmaSet* s) {
    BisimMode m;
    m.sigma_ = s;
    return m;
  }
  bool isSigma() const { return sigma_ != nullptr; }
  const std::set<std::string>& atomSet() const { return atoms_; }
  const SigmaSet& sigmaSet() const { return *sigma_; }

 private:
  std::set<std::string> atoms_;
  const SigmaSet* sigma_ = nullptr;
};

namespace detail {

// Initial agreement partition: equal atom membership, or equal truth of
// every Sigma formula.
inline Partition initialAgreement(const Model& m, const BisimMode& mode) {
  int n = m.worldCount();
  std::vector<std::vector<bool>> sig(n);
  if (mode.isSigma()) {
    for (const auto& e : mode.sigmaSet().elements()) {
      WorldSet truth = evaluate(m, e.full);
      for (int w = 0; w < n; ++w) sig[w].push_back(truth.contains(w));
    }
  } else {
    for (const auto& atom : mode.atomSet()) {
      WorldSet truth = m.atomSet(atom);
      for (int w = 0; w < n; ++w) sig[w].push_back(truth.contains(w));
    }
  }
  std::vector<int> label(n);
  for (int w = 0; w < n; ++w) {
    label[w] = w;
    for (int v = 0; v < w; ++v)
      if (sig[v] == sig[w]) {
        label[w] = label[v];
        break;
      }
  }
  return partitionFromLabels(label, n);
}

}  // namespace detail

// Coarsest (P- or Sigma-) bisimulation partition, computed by refining the
// initial agreement partition with successor-block signatures. Sigma mode
// requires a weakly transitive model.
inline Partition computeBisimilarity(const Model& m, const BisimMode& mode) {
  if (mode.isSigma() && !isWeaklyTransitive(m.frame)) throw NotWeaklyTransitiveError();
  int n = m.worldCount();
  Partition part = detail::initialAgreement(m, mode);
  for (;;) {
    // signature of w: (current block, set of successor blocks)
    std::vector<std::pair<int, std::vector<int>>> sig(n);
    for (int w = 0; w < n; ++w) {
      std::set<int> succBlocks;
      m.frame.successors(w).forEach([&](int v) { succBlocks.insert(part.block_of[v]); });
      sig[w] = {part.block_of[w], {succBlocks.begin(), succBlocks.end()}};
    }
    std::vector<int> label(n);
    for (int w = 0; w < n; ++w) {
      label[w] = w;
      for (int v = 0; v < w; ++v)
        if (sig[v] == sig[w]) {
          label[w] = label[v];
          break;
        }
    }
    Partition next = partitionFromLabels(label, n);
    if (next.blockCount() == part.blockCount()) return part;
    part = std::move(next);
  }
}

// ---------------------------------------------------------------------------
// Quotient

struct QuotientResult {
  Model model;
  WorldMap projection;
};

// Strongly extensional quotient: a block edge iff some representatives are
// related; a block satisfies p iff some member does. The projection is
// verified to be a P-morphism for `atoms` (all valuation atoms by default);
// a partition that is not a bisimulation fails that check.
inline QuotientResult quotientModel(const Model& m, const Partition& part,
                                    std::optional<std::set<std::string>> atoms = {}) {
  int nb = part.blockCount();
  Model q;
  q.frame = Frame(nb);
  for (int w = 0; w < m.worldCount(); ++w)
    m.frame.successors(w).forEach(
        [&](int v) { q.frame.addEdge(part.block_of[w], part.block_of[v]); });
  for (const auto& [atom, worlds] : m.valuation) {
    WorldSet s(nb);
    worlds.forEach([&](int w) { s.add(part.block_of[w]); });
    q.valuation[atom] = std::move(s);
  }
  WorldMap projection(part.block_of.begin(), part.block_of.end());

  std::set<std::string> checkAtoms;
  if (atoms)
    checkAtoms = *atoms;
  else
    for (const auto& [atom, _] : m.valuation) checkAtoms.insert(atom);
  auto check = checkPMorphism(projection, m, q, checkAtoms);
  if (!check.ok)
    throw NotABisimulationError("projection is not a P-morphism: " + check.reason +
                                " at source world " + std::to_string(check.sourceWorld));
  return {std::move(q), std::move(projection)};
}

}  // namespace topomu
