#include <catch2/catch_amalgamated.hpp>

#include "topomu/closure.hpp"
#include "topomu/formula.hpp"
#include "topomu/generators.hpp"
#include "topomu/parser.hpp"
#include "topomu/semantics.hpp"
#include "support/oracles.hpp"

using namespace topomu;

namespace {
Formula p() { return Formula::var("p"); }
Formula q() { return Formula::var("q"); }
}  // namespace

TEST_CASE("parse produces the grammar-defined trees") {
  SurfaceFormula f = parse("nu X. <>(X & p)");
  REQUIRE(f.kind() == SKind::Nu);
  REQUIRE(f.name() == "X");
  REQUIRE(f.child().kind() == SKind::Dia);
  REQUIRE(f.child().child().kind() == SKind::And);
  REQUIRE(f.child().child().child(0).name() == "X");
  REQUIRE(f.child().child().child(1).name() == "p");

  SurfaceFormula g = parse("<*>p");
  REQUIRE(g.kind() == SKind::StarDia);
  REQUIRE(g.child().name() == "p");

  SurfaceFormula h = parse("mu X. p | <>X");
  REQUIRE(h.kind() == SKind::Mu);
  REQUIRE(h.child().kind() == SKind::Or);
  REQUIRE(h.child().child(0).name() == "p");
  REQUIRE(h.child().child(1).kind() == SKind::Dia);
}

TEST_CASE("parse precedence and associativity") {
  CHECK(parse("p & q | r") == parse("(p & q) | r"));
  CHECK(parse("p -> q -> r") == parse("p -> (q -> r)"));
  CHECK(parse("p | q -> r & s <-> t") == parse("((p | q) -> (r & s)) <-> t"));
  CHECK(parse("~p & q") == parse("(~p) & q"));
  CHECK(parse("nu X. p & <>X") == parse("nu X. (p & <>X)"));  // maximal scope
  CHECK(parse("tangle_d{p, q | r}").children().size() == 2);
  CHECK(parse("tangle_c{}").children().empty());
}

TEST_CASE("syntax errors carry byte offsets and expected tokens") {
  try {
    parse("p & ");
    FAIL("should have thrown");
  } catch (const SyntaxError& e) {
    CHECK(e.offset == 4);
    CHECK(!e.expected.empty());
  }
  try {
    parse("nu x. p");  // binder variables are uppercase
    FAIL("should have thrown");
  } catch (const SyntaxError& e) {
    CHECK(e.offset == 3);
    CHECK(e.expected == std::vector<std::string>{"variable"});
  }
  CHECK_THROWS_AS(parse("p @ q"), SyntaxError);
  CHECK_THROWS_AS(parse("(p"), SyntaxError);
}

TEST_CASE("normalize expands sugar to core kinds") {
  // mu X. p | <>X  ->  ~ nu X. ~(p | <> ~X)
  Formula f = normalize(parse("mu X. p | <>X"));
  Formula expected =
      Formula::neg(Formula::nu("X", Formula::neg(Formula::disj(
                                        p(), Formula::dia(Formula::neg(Formula::var("X")))))));
  CHECK(f == expected);

  CHECK(normalize(parse("<*>p")) == Formula::disj(p(), Formula::dia(p())));
  CHECK(normalize(parse("[]p")) == Formula::neg(Formula::dia(Formula::neg(p()))));
  CHECK(normalize(parse("[*]p")) == Formula::conj(p(), Formula::box(p())));
  CHECK(normalize(parse("F")) == Formula::neg(Formula::top()));

  CHECK_THROWS_AS(normalize(parse("nu X. ~X")), NotPositiveError);
  CHECK_THROWS_AS(normalize(parse("mu X. ~X")), NotPositiveError);
  CHECK_NOTHROW(normalize(parse("nu X. ~~X")));
}

TEST_CASE("empty tangle normalizes to a formula equal to T") {
  Formula f = normalize(parse("tangle_d{}"));
  REQUIRE(f.kind() == Kind::Nu);
  CHECK(f.body().kind() == Kind::Top);
  // semantically T on an arbitrary model
  Model m;
  m.frame = Frame(3);
  m.frame.addEdge(0, 1);
  CHECK(evaluate(m, f) == WorldSet::full(3));
}

TEST_CASE("tangle normalization matches the fixpoint definition") {
  Formula f = normalize(parse("tangle_d{p, q}"));
  REQUIRE(f.kind() == Kind::Nu);
  Formula x = Formula::var(f.name());
  CHECK(f.body() == Formula::conj(Formula::dia(Formula::conj(x, p())),
                                  Formula::dia(Formula::conj(x, q()))));
  Formula g = normalize(parse("tangle_c{p}"));
  REQUIRE(g.kind() == Kind::Nu);
  CHECK(g.body() == Formula::starDia(Formula::conj(Formula::var(g.name()), p())));
}

TEST_CASE("freeVars follows the recursive definition") {
  CHECK(freeVars(Formula::top()).empty());
  CHECK(freeVars(Formula::nu("x", Formula::conj(Formula::var("x"), p()))) ==
        std::set<std::string>{"p"});
  CHECK(freeVars(Formula::conj(Formula::var("x"), Formula::dia(Formula::var("y")))) ==
        std::set<std::string>{"x", "y"});
}

TEST_CASE("substitution: bound occurrences untouched, capture avoided") {
  Formula dx = Formula::dia(Formula::var("x"));
  CHECK(substitute(dx, "x", p()) == Formula::dia(p()));

  Formula nuX = Formula::nu("x", Formula::dia(Formula::var("x")));
  CHECK(substitute(nuX, "x", p()) == nuX);

  // Nu(y, <>(x & y))[x := <>y] must rename the binder away from the free y.
  Formula f = Formula::nu("y", Formula::dia(Formula::conj(Formula::var("x"), Formula::var("y"))));
  Formula g = substitute(f, "x", Formula::dia(Formula::var("y")));
  REQUIRE(g.kind() == Kind::Nu);
  CHECK(g.name() != "y");
  CHECK(freeVars(g) == std::set<std::string>{"y"});
}

TEST_CASE("substitution semantic identity on random models") {
  // ||phi(theta)|| = ||phi|| with x := ||theta||, for 100 random models <= 5 worlds
  Rng rng(0xabcdef12);
  for (int trial = 0; trial < 100; ++trial) {
    Model m = randomModel(rng, 5, FrameClass::ALL, {"p", "q", "x"});
    Formula phi = randomFormula(rng, {"p", "q", "x"}, 6);
    Formula theta = randomFormula(rng, {"p", "q"}, 4);
    Formula substituted = substitute(phi, "x", theta);
    Environment env;
    env["x"] = evaluate(m, theta);
    CHECK(evaluate(m, substituted) == evaluate(m, phi, env));
  }
}

TEST_CASE("freeVars of a substitution") {
  Rng rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    Formula f = randomFormula(rng, {"p", "q", "x"}, 6);
    Formula theta = randomFormula(rng, {"p", "r"}, 4);
    if (!freeVars(f).count("x")) continue;
    auto expect = freeVars(f);
    expect.erase("x");
    auto tv = freeVars(theta);
    expect.insert(tv.begin(), tv.end());
    CHECK(freeVars(substitute(f, "x", theta)) == expect);
  }
}

TEST_CASE("subformulas") {
  auto subsOf = [](const Formula& f) {
    auto v = subformulas(f);
    return std::set<Formula>(v.begin(), v.end());
  };
  CHECK(subsOf(p()) == std::set<Formula>{p()});

  Formula f = Formula::dia(Formula::conj(p(), q()));
  CHECK(subsOf(f) == std::set<Formula>{f, Formula::conj(p(), q()), p(), q()});

  Formula g = Formula::nu("x", Formula::dia(Formula::var("x")));
  CHECK(subsOf(g) ==
        std::set<Formula>{g, Formula::dia(Formula::var("x")), Formula::var("x")});
}

TEST_CASE("parse of print is the identity on core formulas") {
  Rng rng(123456);
  for (int trial = 0; trial < 300; ++trial) {
    Formula f = randomFormula(rng, {"p", "q", "r"}, 8);
    CHECK(normalize(parse(print(f))) == f);
  }
  // and a deterministic one with every core construct
  Formula f = Formula::nu(
      "X", Formula::conj(Formula::neg(Formula::conj(p(), Formula::neg(Formula::var("X")))),
                         Formula::dia(Formula::conj(Formula::top(), Formula::var("X")))));
  CHECK(normalize(parse(print(f))) == f);
}

TEST_CASE("normalize is idempotent on its image") {
  Rng rng(999);
  for (int trial = 0; trial < 200; ++trial) {
    Formula f = randomFormula(rng, {"p", "q"}, 8);
    CHECK(normalize(toSurface(f)) == f);
  }
}

TEST_CASE("alpha-normal form: distinct binders, disjoint from free vars") {
  Formula f = normalize(parse("(nu X. <>X) & (nu X. <>(X & p)) & X"));
  CHECK(isAlphaNormal(f));
  CHECK(freeVars(f).count("X"));
  Rng rng(31337);
  for (int trial = 0; trial < 200; ++trial)
    CHECK(isAlphaNormal(randomFormula(rng, {"p", "q"}, 10)));
}

// ---------------------------------------------------------------------------
// Closure sets

TEST_CASE("prefix word normalization yields the 14 S4 modality forms") {
  auto normals = allPrefixNormalForms();
  REQUIRE(normals.size() == 14);
  for (const auto& w : normals) CHECK(normalizePrefixWord(w) == w);

  // every word up to length 9 reduces to one of the 14
  std::set<std::string> seen;
  std::function<void(std::string, int)> walk = [&](std::string w, int left) {
    std::string nf = normalizePrefixWord(w);
    CHECK(std::find(normals.begin(), normals.end(), nf) != normals.end());
    seen.insert(nf);
    if (left == 0) return;
    walk(w + "N", left - 1);
    walk(w + "S", left - 1);
  };
  walk("", 9);
  CHECK(seen.size() == 14);

  CHECK(normalizePrefixWord("NN") == "");
  CHECK(normalizePrefixWord("SS") == "S");
  CHECK(normalizePrefixWord("SNSNSNSN") == "SNSN");  // <*>[*]<*>[*] = <*>[*]
}

TEST_CASE("the 14 prefix forms are pairwise distinct over S4 frames <= 4 worlds") {
  // bounded-frame semantic-equivalence oracle
  auto prefixes = allPrefixNormalForms();
  std::vector<Formula> forms;
  for (const auto& w : prefixes) forms.push_back(applyPrefix(w, p()));

  std::vector<std::vector<bool>> distinguished(14, std::vector<bool>(14, false));
  for (int n = 1; n <= 4; ++n) {
    auto frames =
        oracles::allFrames(n, [](const Frame& f) { return checkFrameClass(f, FrameClass::S4).ok; });
    for (const auto& fr : frames) {
      for (uint64_t val = 0; val < (uint64_t{1} << n); ++val) {
        Model m;
        m.frame = fr;
        WorldSet ps(n);
        for (int w = 0; w < n; ++w)
          if (val & (uint64_t{1} << w)) ps.add(w);
        m.valuation["p"] = ps;
        std::vector<WorldSet> values;
        for (const auto& f : forms) values.push_back(evaluate(m, f));
        for (int i = 0; i < 14; ++i)
          for (int j = i + 1; j < 14; ++j)
            if (values[i] != values[j]) distinguished[i][j] = true;
      }
    }
  }
  for (int i = 0; i < 14; ++i)
    for (int j = i + 1; j < 14; ++j) {
      INFO("prefixes '" << prefixes[i] << "' vs '" << prefixes[j] << "'");
      CHECK(distinguished[i][j]);
    }
}

TEST_CASE("closureSet contains the required elements") {
  SigmaSet sigma = closureSet(p());
  for (const char* text :
       {"T", "p", "~p", "<*>p", "<*>~p", "~<*>p", "~<*>~p"})
    CHECK(sigma.contains(normalize(parse(text))));
}

TEST_CASE("closureSet is a fixed point of the closure rules") {
  for (const char* seedText : {"p", "<>(p & q)", "nu X. <>(X & p)", "<*>p -> q"}) {
    Formula seed = normalize(parse(seedText));
    SigmaSet sigma = closureSet(seed);
    CHECK(sigma.contains(Formula::top()));
    CHECK(sigma.contains(seed));
    for (const auto& sub : subformulas(seed)) CHECK(sigma.contains(sub));
    // applying ~ or <*> to any member stays inside
    for (const auto& e : sigma.elements()) {
      CHECK(sigma.contains(Formula::neg(e.full)));
      CHECK(sigma.contains(Formula::starDia(e.full)));
    }
    // and the size bound: <= 14 * (|Sub(seed)| + 1)
    CHECK(sigma.size() <= 14 * (int(subformulas(seed).size()) + 1));
  }
}

TEST_CASE("peelPrefix inverts applyPrefix") {
  for (const auto& w : allPrefixNormalForms()) {
    auto [word, base] = peelPrefix(applyPrefix(w, q()));
    CHECK(word == w);
    CHECK(base == q());
  }
}
