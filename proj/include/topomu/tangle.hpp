#pragma once

// The spine model and the tangled-fragment expressivity experiment.
//
// The spine truncates the ordinal model omega+3 to m finite ordinals plus
// three top points: index m plays omega, m+1 plays omega+1, m+2 plays
// omega+2. Edges: alpha -> beta iff the rank drops, or alpha = beta with an
// odd role (finite odd, or omega+1), or alpha = omega+1 and beta = omega+2.
// The atom p holds exactly at odd-role worlds.
//
// The experiment separates the tangled-derivative fragment from the full
// calculus: every fragment formula eventually agrees on same-parity worlds
// above the cutoff 2|phi|, while tangle_c{p, ~p} holds exactly at
// {omega+1, omega+2}.

#include <algorithm>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "topomu/errors.hpp"
#include "topomu/frame.hpp"
#include "topomu/parallel.hpp"
#include "topomu/semantics.hpp"
#include "topomu/surface.hpp"

namespace topomu {

enum class SpineRole { FiniteEven, FiniteOdd, Omega, OmegaPlus1, OmegaPlus2 };

// Role by position; the top three worlds carry ordinal parity regardless of
// the parity of the encoding index m.
inline SpineRole spineRole(int m, int world) {
  if (world < m) return world % 2 ? SpineRole::FiniteOdd : SpineRole::FiniteEven;
  if (world == m) return SpineRole::Omega;
  if (world == m + 1) return SpineRole::OmegaPlus1;
  return SpineRole::OmegaPlus2;
}

inline bool spineOddRole(int m, int world) {
  SpineRole r = spineRole(m, world);
  return r == SpineRole::FiniteOdd || r == SpineRole::OmegaPlus1;
}

inline Model buildSpine(int m) {
  if (m < 2) throw InvalidInputError("spine truncation requires m >= 2");
  int n = m + 3;
  Model out;
  out.frame = Frame(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      bool edge = (a > b) || (a == b && spineOddRole(m, a)) || (a == m + 1 && b == m + 2);
      if (edge) out.frame.addEdge(a, b);
    }
  WorldSet p(n);
  for (int w = 0; w < n; ++w)
    if (spineOddRole(m, w)) p.add(w);
  out.valuation["p"] = std::move(p);
  return out;
}

// ---------------------------------------------------------------------------
// Enumeration of the tangled-derivative fragment: atoms, T, ~, &, |, <>,
// tangle_d{...}. Deduplicated modulo commutativity/idempotence of & and |
// and double negation; tangle arguments are sorted sets.

namespace detail {

inline std::optional<SurfaceFormula> canonNeg(const SurfaceFormula& c) {
  if (c.kind() == SKind::Neg) return std::nullopt;  // double negation collapses
  return SurfaceFormula::unary(SKind::Neg, c);
}

inline std::optional<SurfaceFormula> canonBinary(SKind k, const SurfaceFormula& a,
                                                 const SurfaceFormula& b) {
  int c = a.compare(b);
  if (c == 0) return std::nullopt;                          // idempotence
  if (c > 0) return SurfaceFormula::binary(k, b, a);        // commutativity
  return SurfaceFormula::binary(k, a, b);
}

}  // namespace detail

// Every fragment formula of surface size <= sizeBound, smallest first, each
// size class ordered structurally. Deterministic.
inline std::vector<SurfaceFormula> enumerateTangleFragment(const std::vector<std::string>& atoms,
                                                           int sizeBound) {
  if (sizeBound < 1) throw InvalidInputError("size bound must be at least 1");
  std::vector<std::vector<SurfaceFormula>> bySize(sizeBound + 1);
  std::set<SurfaceFormula> seen;
  auto emit = [&](std::optional<SurfaceFormula> f) {
    if (!f) return;
    if (f->size() > sizeBound) return;
    if (seen.insert(*f).second) bySize[f->size()].push_back(*f);
  };

  emit(SurfaceFormula::top());
  for (const auto& a : atoms) emit(SurfaceFormula::var(a));
  emit(SurfaceFormula::tangle(SKind::TangleD, {}));

  for (int n = 2; n <= sizeBound; ++n) {
    for (const auto& c : bySize[n - 1]) {
      emit(detail::canonNeg(c));
      emit(SurfaceFormula::unary(SKind::Dia, c));
      emit(SurfaceFormula::tangle(SKind::TangleD, {c}));
    }
    for (int ls = 1; ls <= n - 2; ++ls) {
      int rs = n - 1 - ls;
      for (const auto& a : bySize[ls])
        for (const auto& b : bySize[rs]) {
          emit(detail::canonBinary(SKind::And, a, b));
          emit(detail::canonBinary(SKind::Or, a, b));
        }
    }
    // tangle sets with >= 2 elements: strictly increasing argument lists
    std::vector<SurfaceFormula> pool;
    for (int s = 1; s <= n - 2; ++s)
      for (const auto& f : bySize[s]) pool.push_back(f);
    std::sort(pool.begin(), pool.end());
    std::vector<SurfaceFormula> picked;
    std::function<void(size_t, int)> pick = [&](size_t from, int budget) {
      if (picked.size() >= 2) emit(SurfaceFormula::tangle(SKind::TangleD, picked));
      for (size_t i = from; i < pool.size(); ++i) {
        if (pool[i].size() > budget) continue;
        picked.push_back(pool[i]);
        pick(i + 1, budget - pool[i].size());
        picked.pop_back();
      }
    };
    // exact total size n-1 is enforced by `emit` discarding oversized trees;
    // smaller sets were already produced at smaller n and dedup
    pick(0, n - 1);
  }

  std::vector<SurfaceFormula> out;
  for (int n = 1; n <= sizeBound; ++n) {
    std::sort(bySize[n].begin(), bySize[n].end());
    out.insert(out.end(), bySize[n].begin(), bySize[n].end());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Expressivity experiment

struct ExperimentRow {
  SurfaceFormula formula;
  int size = 0;
  int cutoff = 0;       // 2 * |formula|
  int violations = 0;   // same-parity pairs above the cutoff that disagree
  bool valueAtOmega = false;
  bool valueAtOmegaPlus2 = false;
};

struct ExperimentReport {
  int m = 0;
  int sizeBound = 0;
  std::vector<ExperimentRow> rows;
  WorldSet tangleClosureEval;       // || tangle_c{p, ~p} ||, expected {m+1, m+2}
  int totalViolations = 0;
  bool omegaPairAgreesEverywhere = true;  // worlds m and m+2 on every row
  bool separatorDistinguishes = false;    // tangle_c{p,~p}: true at m+2, false at m
};

inline SurfaceFormula tangleClosurePNotP() {
  return SurfaceFormula::tangle(
      SKind::TangleC, {SurfaceFormula::var("p"),
                       SurfaceFormula::unary(SKind::Neg, SurfaceFormula::var("p"))});
}

inline ExperimentReport expressivityExperiment(int m, int sizeBound, int jobs = 1) {
  if (m < 4 * sizeBound + 2)
    throw InvalidInputError("precondition violated: need m >= 4*sizeBound + 2 so parity witnesses fit below the truncation");
  Model spine = buildSpine(m);
  int n = spine.worldCount();

  ExperimentReport report;
  report.m = m;
  report.sizeBound = sizeBound;

  auto formulas = enumerateTangleFragment({"p"}, sizeBound);
  report.rows.resize(formulas.size());
  parallelFor(jobs, formulas.size(), [&](size_t i) {
    ExperimentRow row;
    row.formula = formulas[i];
    row.size = formulas[i].size();
    row.cutoff = 2 * row.size;
    WorldSet truth = evaluate(spine, normalize(formulas[i]));
    row.valueAtOmega = truth.contains(m);
    row.valueAtOmegaPlus2 = truth.contains(m + 2);
    for (int a = row.cutoff + 1; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        if (spineOddRole(m, a) == spineOddRole(m, b) && truth.contains(a) != truth.contains(b))
          ++row.violations;
    report.rows[i] = std::move(row);
  });

  for (const auto& row : report.rows) {
    report.totalViolations += row.violations;
    if (row.valueAtOmega != row.valueAtOmegaPlus2) report.omegaPairAgreesEverywhere = false;
  }
  report.tangleClosureEval = evaluate(spine, normalize(tangleClosurePNotP()));
  report.separatorDistinguishes = report.tangleClosureEval.contains(m + 2) &&
                                  !report.tangleClosureEval.contains(m);
  return report;
}

// CSV emission: formula, size, cutoff, violations, valueAtOmega, valueAtOmegaPlus2
inline std::string toCsv(const ExperimentReport& report) {
  std::string out = "formula,size,cutoff,violations,valueAtOmega,valueAtOmegaPlus2\n";
  for (const auto& row : report.rows) {
    out += "\"" + print(row.formula) + "\"," + std::to_string(row.size) + "," +
           std::to_string(row.cutoff) + "," + std::to_string(row.violations) + "," +
           (row.valueAtOmega ? "true" : "false") + "," +
           (row.valueAtOmegaPlus2 ? "true" : "false") + "\n";
  }
  return out;
}

}  // namespace topomu
