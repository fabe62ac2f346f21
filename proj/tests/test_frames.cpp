#include <catch2/catch_amalgamated.hpp>

#include "topomu/fmp_bound.hpp"
#include "topomu/frame.hpp"
#include "topomu/generators.hpp"
#include "topomu/parser.hpp"
#include "topomu/semantics.hpp"
#include "support/oracles.hpp"

using namespace topomu;

namespace {
Frame chain3() {  // a->b->c, no shortcut
  Frame f(3);
  f.addEdge(0, 1);
  f.addEdge(1, 2);
  return f;
}
}  // namespace

TEST_CASE("checkFrameClass") {
  SECTION("loopless 2-cluster is weakly transitive") {
    Frame f(2);
    f.addEdge(0, 1);
    f.addEdge(1, 0);
    CHECK(checkFrameClass(f, FrameClass::WK4).ok);
    // ... but not WK4T0: two irreflexive points share a cluster
    auto r = checkFrameClass(f, FrameClass::WK4T0);
    REQUIRE_FALSE(r.ok);
    CHECK(r.witness == std::vector<int>{0, 1});
  }
  SECTION("chain without shortcut fails WK4 with a triple") {
    auto r = checkFrameClass(chain3(), FrameClass::WK4);
    REQUIRE_FALSE(r.ok);
    CHECK(r.witness == std::vector<int>{0, 1, 2});
  }
  SECTION("K4, S4, IRR_WK4 witnesses") {
    Frame f = chain3();
    CHECK_FALSE(checkFrameClass(f, FrameClass::K4).ok);
    f.addEdge(0, 2);
    CHECK(checkFrameClass(f, FrameClass::K4).ok);
    auto s4 = checkFrameClass(f, FrameClass::S4);
    REQUIRE_FALSE(s4.ok);
    CHECK(s4.witness == std::vector<int>{0});  // shortest witness: irreflexive point
    CHECK(checkFrameClass(f, FrameClass::IRR_WK4).ok);
    f.addEdge(1, 1);
    auto irr = checkFrameClass(f, FrameClass::IRR_WK4);
    REQUIRE_FALSE(irr.ok);
    CHECK(irr.witness == std::vector<int>{1});
  }
  SECTION("ALL imposes nothing") { CHECK(checkFrameClass(chain3(), FrameClass::ALL).ok); }
}

TEST_CASE("analyze: clusters and depth") {
  SECTION("single reflexive world") {
    Frame f(1);
    f.addEdge(0, 0);
    auto a = analyze(f);
    CHECK(a.clusters.blockCount() == 1);
    CHECK(a.depth == std::vector<int>{0});
    CHECK(a.frameDepth == 0);
  }
  SECTION("irreflexive 2-chain") {
    Frame f(2);
    f.addEdge(0, 1);
    auto a = analyze(f);
    CHECK(a.depth == std::vector<int>{1, 0});
    CHECK(a.frameDepth == 1);
    CHECK(a.clusters.blockCount() == 2);
  }
  SECTION("cluster {a,b} above irreflexive c") {
    Frame f(3);
    f.addEdge(0, 1);
    f.addEdge(1, 0);
    f.addEdge(1, 2);
    f.addEdge(0, 2);
    auto a = analyze(f);
    CHECK(a.depth == std::vector<int>{1, 1, 0});
    CHECK(a.clusters.block_of[0] == a.clusters.block_of[1]);
    CHECK(a.clusters.block_of[0] != a.clusters.block_of[2]);
  }
  SECTION("rejects non weakly transitive frames") {
    CHECK_THROWS_AS(analyze(chain3()), NotWeaklyTransitiveError);
  }
}

TEST_CASE("depth lemma on random weakly transitive frames") {
  Rng rng(42);
  for (int trial = 0; trial < 200; ++trial) {
    Frame f = randomFrame(rng, rng.intIn(1, 7), FrameClass::WK4);
    auto a = analyze(f);
    int n = f.worldCount();
    for (int w = 0; w < n; ++w) {
      CHECK(a.depth[w] == oracles::depthByChainSearch(f, w));
      for (int s = 0; s < n; ++s) {
        if (w == s) continue;
        if (f.hasEdge(w, s)) {
          CHECK(a.depth[w] >= a.depth[s]);  // w ->* s
          if (f.hasEdge(s, w)) CHECK(a.depth[w] == a.depth[s]);
          if (a.depth[w] == a.depth[s]) CHECK(f.hasEdge(s, w));  // equal finite depth => cluster
          if (!f.hasEdge(s, w)) CHECK(a.depth[w] > a.depth[s]);  // strict edge
        }
      }
    }
  }
}

TEST_CASE("irreflexiveUnfold") {
  SECTION("single reflexive point with p") {
    Model m;
    m.frame = Frame(1);
    m.frame.addEdge(0, 0);
    m.valuation["p"] = WorldSet::full(1);
    auto [out, proj] = irreflexiveUnfold(m);
    REQUIRE(out.worldCount() == 2);
    CHECK(out.frame.hasEdge(0, 1));
    CHECK(out.frame.hasEdge(1, 0));
    CHECK_FALSE(out.frame.hasEdge(0, 0));
    CHECK(out.valuation["p"] == WorldSet::full(2));
    CHECK(proj == std::vector<int>{0, 0});
    Formula f = normalize(parse("nu X. <>(X & p)"));
    CHECK(evaluate(out, f) == WorldSet::full(2));
  }
  SECTION("already irreflexive model unchanged in size") {
    Model m;
    m.frame = Frame(2);
    m.frame.addEdge(0, 1);
    auto [out, proj] = irreflexiveUnfold(m);
    CHECK(out.worldCount() == 2);
    CHECK(out.frame == m.frame);
  }
  SECTION("2 reflexive + 1 irreflexive worlds -> 5 worlds") {
    Model m;
    m.frame = Frame(3);
    m.frame.addEdge(0, 0);
    m.frame.addEdge(1, 1);
    auto [out, proj] = irreflexiveUnfold(m);
    CHECK(out.worldCount() == 5);
  }
  SECTION("output is always irreflexive weakly transitive") {
    Rng rng(7);
    for (int trial = 0; trial < 200; ++trial) {
      Model m = randomModel(rng, 6, FrameClass::WK4, {"p"});
      auto [out, proj] = irreflexiveUnfold(m);
      CHECK(checkFrameClass(out.frame, FrameClass::IRR_WK4).ok);
      int refl = 0;
      for (int w = 0; w < m.worldCount(); ++w)
        if (m.frame.hasEdge(w, w)) ++refl;
      CHECK(out.worldCount() == m.worldCount() + refl);
    }
  }
}

TEST_CASE("isCofinal") {
  Frame ab(2);
  ab.addEdge(0, 1);
  CHECK(isCofinal(ab, WorldSet::full(2)));
  CHECK_FALSE(isCofinal(ab, WorldSet::singleton(2, 0)));
  CHECK(isCofinal(ab, WorldSet::singleton(2, 1)));  // vacuous: {b}-up is empty
}

TEST_CASE("weak transitivity is inherited by generated subframes") {
  Rng rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    Frame f = randomFrame(rng, rng.intIn(2, 6), FrameClass::WK4);
    int n = f.worldCount();
    int root = int(rng.below(uint64_t(n)));
    WorldSet reach = WorldSet::singleton(n, root);
    for (;;) {
      WorldSet next = reach;
      reach.forEach([&](int w) { next |= f.successors(w); });
      if (next == reach) break;
      reach = next;
    }
    auto worlds = reach.toVector();
    Frame sub(int(worlds.size()));
    for (size_t a = 0; a < worlds.size(); ++a)
      for (size_t b = 0; b < worlds.size(); ++b)
        if (f.hasEdge(worlds[a], worlds[b])) sub.addEdge(int(a), int(b));
    CHECK(checkFrameClass(sub, FrameClass::WK4).ok);
  }
}

// ---------------------------------------------------------------------------
// FMP bounds

TEST_CASE("fmpBound base cases") {
  auto b1 = fmpBound(1);
  REQUIRE(b1.perDepth.size() == 1);
  CHECK(b1.perDepth[0].toBigInt() == 8);
  CHECK(b1.total.toBigInt() == 8);
  CHECK(b1.depthBound == 0);

  auto b2 = fmpBound(2);
  REQUIRE(b2.perDepth.size() == 2);
  CHECK(b2.perDepth[0].toBigInt() == 64);
  CHECK(b2.perDepth[1].toBigInt() == BigInt(1) << 70);  // 2^2 * 2^4 * 2^64
  CHECK(b2.total.toBigInt() == (BigInt(1) << 70) + 64);
  CHECK(b2.depthBound == 1);

  CHECK_THROWS_AS(fmpBound(0), InvalidInputError);
}

TEST_CASE("fmpBound recursion shape for s <= 4") {
  for (int s = 1; s <= 4; ++s) {
    auto b = fmpBound(s);
    REQUIRE(int(b.perDepth.size()) == s);
    CHECK(b.depthBound == s - 1);
    HugeInt a = HugeInt(BigInt(s) + (BigInt(1) << s));
    // perDepth[0] = 2^(s + 2^s), perDepth[n] = 2^(s + 2^s + perDepth[n-1])
    REQUIRE(b.perDepth[0].isPowerOfTwo());
    CHECK(b.perDepth[0].pow2Exponent() == a);
    for (int n = 1; n < s; ++n) {
      REQUIRE(b.perDepth[n].isPowerOfTwo());
      CHECK(b.perDepth[n].pow2Exponent() == a + b.perDepth[n - 1]);
    }
  }
}

TEST_CASE("fmpBound total is strictly monotone for s in 1..4") {
  for (int s = 1; s <= 4; ++s) {
    CAPTURE(s);
    CHECK(fmpBound(s).total < fmpBound(s + 1).total);
  }
}

TEST_CASE("tower arithmetic sanity") {
  HugeInt big = HugeInt::exp2(HugeInt::exp2(HugeInt::exp2(HugeInt(100))));
  HugeInt alsoBig = HugeInt::exp2(HugeInt::exp2(HugeInt::exp2(HugeInt(99))));
  CHECK(alsoBig < big);
  CHECK(big == big);
  CHECK(HugeInt(5) < big);
  CHECK(big > HugeInt(BigInt(1) << 1000));
  CHECK((big + alsoBig) > big);
  CHECK(HugeInt::exp2(HugeInt(10)).toBigInt() == 1024);
  CHECK((HugeInt(3) + HugeInt(4)).toBigInt() == 7);
  CHECK(HugeInt::exp2(HugeInt(3)).isPowerOfTwo());
  CHECK(HugeInt::exp2(HugeInt(3)).pow2Exponent() == HugeInt(3));
}
