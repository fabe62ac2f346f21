#include <catch2/catch_amalgamated.hpp>

#include "topomu/generators.hpp"
#include "topomu/parser.hpp"
#include "topomu/semantics.hpp"
#include "support/oracles.hpp"

using namespace topomu;

TEST_CASE("evaluate basics") {
  SECTION("single irreflexive world: <>T is empty") {
    Model m;
    m.frame = Frame(1);
    CHECK(evaluate(m, normalize(parse("<>T"))).none());
  }
  SECTION("single reflexive world with p: nu X. <>(X & p) holds") {
    Model m;
    m.frame = Frame(1);
    m.frame.addEdge(0, 0);
    m.valuation["p"] = WorldSet::full(1);
    Formula f = normalize(parse("nu X. <>(X & p)"));
    CHECK(evaluate(m, f) == WorldSet::full(1));
    CHECK(evaluate(m, f) == oracles::gfpBySubsetEnumeration(m, f));
  }
  SECTION("environment shadows the model valuation") {
    Model m;
    m.frame = Frame(2);
    m.valuation["p"] = WorldSet::singleton(2, 0);
    Environment env;
    env["p"] = WorldSet::singleton(2, 1);
    CHECK(evaluate(m, Formula::var("p"), env) == WorldSet::singleton(2, 1));
  }
  SECTION("absent lowercase atom is empty; absent uppercase var is an error") {
    Model m;
    m.frame = Frame(1);
    CHECK(evaluate(m, Formula::var("nowhere")).none());
    CHECK_THROWS_AS(evaluate(m, Formula::var("X")), UnboundVariableError);
  }
}

TEST_CASE("gfpTrace") {
  SECTION("3-world strict chain, nu X. <>X") {
    Model m;
    m.frame = Frame(3);
    m.frame.addEdge(0, 1);
    m.frame.addEdge(1, 2);
    m.frame.addEdge(0, 2);
    auto t = gfpTrace(m, normalize(parse("nu X. <>X")));
    REQUIRE(t.stages.size() == 5);
    CHECK(t.stages[0] == WorldSet::full(3));
    CHECK(t.stages[1].toVector() == std::vector<int>{0, 1});
    CHECK(t.stages[2].toVector() == std::vector<int>{0});
    CHECK(t.stages[3].none());
    CHECK(t.stages[4].none());
    CHECK(t.stabilization == 3);
  }
  SECTION("constant body stabilizes at 0") {
    Model m;
    m.frame = Frame(4);
    auto t = gfpTrace(m, normalize(parse("nu X. T")));
    REQUIRE(t.stages.size() == 2);
    CHECK(t.stabilization == 0);
  }
  SECTION("stabilization index <= |W| on 1000 random models") {
    Rng rng(2024);
    for (int trial = 0; trial < 1000; ++trial) {
      Model m = randomModel(rng, 8, FrameClass::ALL, {"p", "q"});
      Formula body = randomPositiveBody(rng, "Z", {"p", "q"}, 6);
      Formula f = Formula::nu("Z", body);
      auto t = gfpTrace(m, f);
      CHECK(t.stabilization <= m.worldCount());
      CHECK(t.stages.back() == evaluate(m, f));
      // the chain is weakly decreasing and the last two entries are equal
      for (size_t i = 0; i + 1 < t.stages.size(); ++i)
        CHECK(t.stages[i + 1].subsetOf(t.stages[i]));
      CHECK(t.stages[t.stages.size() - 1] == t.stages[t.stages.size() - 2]);
    }
  }
}

TEST_CASE("dNeighborhoods") {
  SECTION("single reflexive world") {
    Model m;
    m.frame = Frame(1);
    m.frame.addEdge(0, 0);
    auto nd = dNeighborhoods(m, 0);
    CHECK(nd.minimal == WorldSet::full(1));
    CHECK(nd.contains(WorldSet::full(1)));
  }
  SECTION("single irreflexive world: empty set is a d-neighborhood") {
    Model m;
    m.frame = Frame(1);
    auto nd = dNeighborhoods(m, 0);
    CHECK(nd.minimal.none());
    CHECK(nd.contains(WorldSet(1)));
  }
  SECTION("frame a->b: N_d(a) = supersets of {b}") {
    Model m;
    m.frame = Frame(2);
    m.frame.addEdge(0, 1);
    auto nd = dNeighborhoods(m, 0);
    CHECK(nd.minimal == WorldSet::singleton(2, 1));
    CHECK(nd.contains(WorldSet::full(2)));
    CHECK(nd.contains(WorldSet::singleton(2, 1)));
    CHECK_FALSE(nd.contains(WorldSet::singleton(2, 0)));
    CHECK_FALSE(nd.contains(WorldSet(2)));
  }
}

TEST_CASE("d-neighborhood characterization of the derivative (exhaustive)") {
  // d(X) = { y : every d-neighborhood of y meets X }, quantifying over every
  // subset U literally, on frames up to 10 worlds.
  Rng rng(5);
  for (int n : {1, 2, 3, 6, 10}) {
    Frame fr = randomFrame(rng, n, FrameClass::ALL);
    Model m;
    m.frame = fr;
    for (uint64_t xm = 0; xm < (uint64_t{1} << n); ++xm) {
      WorldSet x(n);
      for (int w = 0; w < n; ++w)
        if (xm & (uint64_t{1} << w)) x.add(w);
      WorldSet d = fr.derivative(x);
      for (int y = 0; y < n; ++y) {
        auto nd = dNeighborhoods(m, y);
        bool everyNeighborhoodMeetsX = true;
        for (uint64_t um = 0; um < (uint64_t{1} << n) && everyNeighborhoodMeetsX; ++um) {
          WorldSet u(n);
          for (int w = 0; w < n; ++w)
            if (um & (uint64_t{1} << w)) u.add(w);
          if (nd.contains(u) && !u.intersects(x)) everyNeighborhoodMeetsX = false;
        }
        CHECK(d.contains(y) == everyNeighborhoodMeetsX);
      }
    }
  }
}

TEST_CASE("monotonicity of positive bodies") {
  Rng rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    Model m = randomModel(rng, 7, FrameClass::ALL, {"p", "q"});
    int n = m.worldCount();
    Formula body = randomPositiveBody(rng, "Y", {"p", "q"}, 6);
    WorldSet small(n), large(n);
    for (int w = 0; w < n; ++w) {
      if (rng.chance(0.3)) small.add(w);
      if (small.contains(w) || rng.chance(0.4)) large.add(w);
    }
    Environment envS{{"Y", small}}, envL{{"Y", large}};
    CHECK(evaluate(m, body, envS).subsetOf(evaluate(m, body, envL)));
  }
}

TEST_CASE("greatest fixed point law (subset-enumeration oracle, <= 12 worlds)") {
  Rng rng(4242);
  for (int trial = 0; trial < 60; ++trial) {
    Model m = randomModel(rng, 12, FrameClass::ALL, {"p", "q"});
    Formula body = randomPositiveBody(rng, "Z", {"p", "q"}, 5);
    Formula f = Formula::nu("Z", body);
    WorldSet s = evaluate(m, f);
    CHECK(s == oracles::gfpBySubsetEnumeration(m, f));
    // S is itself a fixed point
    Environment env{{"Z", s}};
    CHECK(evaluate(m, body, env) == s);
  }
}

TEST_CASE("star modalities are interior and closure") {
  Rng rng(321);
  for (int trial = 0; trial < 200; ++trial) {
    Model m = randomModel(rng, 7, FrameClass::ALL, {"p"});
    WorldSet p = m.atomSet("p");
    CHECK(evaluate(m, normalize(parse("<*>p"))) == relationalClosure(m.frame, p));
    CHECK(evaluate(m, normalize(parse("[*]p"))) == relationalInterior(m.frame, p));
    CHECK(relationalClosure(m.frame, p) == (p | m.frame.derivative(p)));
  }
}

TEST_CASE("weak idempotence of the relational derivative on wK4 frames") {
  // exhaustive over all weakly transitive frames with <= 3 worlds, all X
  for (int n = 1; n <= 3; ++n) {
    auto frames = oracles::allFrames(
        n, [](const Frame& f) { return checkFrameClass(f, FrameClass::WK4).ok; });
    for (const auto& fr : frames)
      for (uint64_t xm = 0; xm < (uint64_t{1} << n); ++xm) {
        WorldSet x(n);
        for (int w = 0; w < n; ++w)
          if (xm & (uint64_t{1} << w)) x.add(w);
        CHECK(fr.derivative(fr.derivative(x)).subsetOf(x | fr.derivative(x)));
      }
  }
}

TEST_CASE("locality: truth above w depends only on the cone above w") {
  Rng rng(808);
  for (int trial = 0; trial < 300; ++trial) {
    Model m = randomModel(rng, 7, FrameClass::WK4, {"p"});
    int n = m.worldCount();
    Formula f = randomFormula(rng, {"p", "y", "z"}, 6);
    Environment env;
    for (const auto& v : {"y", "z"}) {
      WorldSet s(n);
      for (int w = 0; w < n; ++w)
        if (rng.chance(0.5)) s.add(w);
      env[v] = s;
    }
    int w = int(rng.below(uint64_t(n)));
    WorldSet cone = m.frame.upStar(w);
    Environment envCut;
    for (const auto& [k, v] : env) envCut[k] = v & cone;
    CHECK((evaluate(m, f, env) & cone) == (evaluate(m, f, envCut) & cone));
  }
}
