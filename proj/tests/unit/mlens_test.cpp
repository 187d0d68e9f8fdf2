#include "bxlens/mlens.hpp"
#include "doctest.h"

using namespace bxlens;

namespace {

CarrierPtr bits() { return Carrier::make("B", {"0", "1"}); }
CarrierPtr boolC() { return Carrier::make("Bool", {"F", "T"}); }

PureLens bitFlip() {
  PureLens l;
  l.source = bits();
  l.view = bits();
  l.get = [](int a) { return 1 - a; };
  l.put = [](int, int b) { return 1 - b; };
  l.create = [](int b) { return 1 - b; };
  l.name = "flip";
  return l;
}

EffectValue just(int v) {
  EffectValue m;
  m.has = true;
  m.v = v;
  return m;
}
EffectValue nothing() { return {}; }

}  // namespace

TEST_CASE("lifting a lawful pure lens stays lawful under every effect") {
  PureLens flip = bitFlip();
  REQUIRE(checkPureLaws(flip).pass());
  std::vector<EffectPtr> tags = {
      Effect::identity(), Effect::maybe(), Effect::list(),
      Effect::writer(Monoid::freeList(boolC())), Effect::state(boolC())};
  for (const auto& tag : tags) {
    MLens m = lens2mlens(tag, flip);
    CHECK(checkMLensLaws(m).pass());
  }
}

TEST_CASE("composeM runs the inner put first") {
  // both lenses log a private marker on every put; the composite's log
  // pins the evaluation order
  CarrierPtr marks = Carrier::make("L", {"p", "q"});
  EffectPtr w = Effect::writer(Monoid::freeList(marks));
  auto mark = [&](const PureLens& base, int marker) {
    MLens m = lens2mlens(w, base);
    m.mput = [w, base, marker](int a, int b) {
      EffectValue r = ret(*w, base.put(a, b));
      r.log.w = {marker};
      return r;
    };
    return m;
  };
  MLens outer = mark(bitFlip(), 0);    // logs p
  MLens inner = mark(idLens(bits()), 1);  // logs q
  MLens c = composeM(outer, inner);
  EffectValue r = c.mput(0, 0);
  CHECK(r.log.w == std::vector<int>{1, 0});
}

TEST_CASE("composition preserves well-behavedness") {
  CarrierPtr b = bits();
  for (const auto& tag :
       {Effect::maybe(), Effect::state(boolC()), Effect::list()}) {
    MLens l1 = lens2mlens(tag, bitFlip());
    MLens l2 = lens2mlens(tag, idLens(b));
    MLens c = composeM(l1, l2);
    CHECK(checkMLensLaws(c).pass());
    CHECK(c.hasCreate());
  }
}

TEST_CASE("composition requires one effect tag") {
  MLens l1 = lens2mlens(Effect::maybe(), bitFlip());
  MLens l2 = lens2mlens(Effect::list(), idLens(bits()));
  CHECK_THROWS_AS(composeM(l1, l2), TagMismatch);
}

TEST_CASE("constMLens accepts only the constant view") {
  CarrierPtr s = Carrier::make("S", {"s0", "s1", "s2"});
  CarrierPtr v = bits();
  MLens c = constMLens(s, v, 1, 2);
  CHECK(checkMLensLaws(c).pass());
  CHECK(c.mget(0) == 1);
  CHECK(c.mput(0, 1) == just(0));   // unchanged view keeps the source
  CHECK(c.mput(0, 0) == nothing()); // any change fails
  CHECK(c.mcreate(1) == just(2));   // the default source
  CHECK(c.mcreate(0) == nothing());
}

TEST_CASE("absLens restores the sign and rejects negative views") {
  MLens a = absLens(3);
  CHECK(checkMLensLaws(a).pass());
  const int n = 3;
  auto idx = [n](int x) { return x + n; };
  CHECK(a.mget(idx(-2)) == idx(2) - n + n);  // |−2| = 2
  CHECK(a.mget(idx(-2)) == idx(2));
  CHECK(a.mput(idx(-2), idx(1)) == just(idx(-1)));  // sign restored
  CHECK(a.mput(idx(2), idx(1)) == just(idx(1)));
  CHECK(a.mput(idx(0), idx(3)) == just(idx(3)));
  CHECK(a.mput(idx(2), idx(-1)) == nothing());  // negative view
  CHECK(a.mcreate(idx(-1)) == nothing());
  CHECK(a.mcreate(idx(2)) == just(idx(2)));
}

TEST_CASE("logLens records the old source only on actual change") {
  CarrierPtr b = bits();
  MLens lg = logLens(idLens(b));
  CHECK(lg.effect->kind() == EffectKind::Writer);
  CHECK(checkMLensLaws(lg).pass());
  EffectValue same = lg.mput(1, 1);
  CHECK(same.log.w.empty());
  CHECK(same.v == 1);
  EffectValue changed = lg.mput(1, 0);
  CHECK(changed.log.w == std::vector<int>{1});
  CHECK(changed.v == 0);
  EffectValue made = lg.mcreate(0);
  CHECK(made.log.w.empty());
  CHECK(made.v == 0);
}

TEST_CASE("law reports carry the violating binding") {
  CarrierPtr b = bits();
  MLens m = lens2mlens(Effect::maybe(), idLens(b));
  m.mput = [](int, int) { return nothing(); };
  LawReport r = checkMLensLaws(m);
  REQUIRE(r.hasLaw("MGetPut"));
  const Violation* v = r.firstOf("MGetPut");
  CHECK(v->where == decltype(v->where){{"a", "0"}});
  CHECK(v->lhs == "nothing");
  CHECK(v->rhs == "just 0");
}

TEST_CASE("an empty source cannot carry a nonempty view") {
  MLens m;
  m.effect = Effect::maybe();
  m.source = Carrier::make("none", {});
  m.view = bits();
  m.mget = [](int) { return 0; };
  m.mput = [](int, int) { return nothing(); };
  LawReport r = checkMLensLaws(m);
  REQUIRE(r.hasLaw("MGetPut"));
  CHECK(r.firstOf("MGetPut")->note ==
        "empty source admits no total put for a nonempty view");
}

TEST_CASE("toPure recovers the tables of an identity-effect lens") {
  MLens m = lens2mlens(Effect::identity(), bitFlip());
  PureLens p = toPure(m);
  CHECK(checkPureLaws(p).pass());
  CHECK(p.get(0) == 1);
  CHECK(p.put(0, 0) == 1);
  CHECK(p.create(1) == 0);
  CHECK_THROWS_AS(toPure(lens2mlens(Effect::maybe(), bitFlip())),
                  NonPureInput);
}

TEST_CASE("naive lenses built from well-behaved lenses stay lawful") {
  NaiveMLens n = asNaive(lens2mlens(Effect::maybe(), bitFlip()));
  CHECK(checkNaiveLaws(n).pass());
}

TEST_CASE("naive composition search over State finds the minimal shape") {
  NaiveSearchResult r = searchNaiveCounterexample(Effect::state(boolC()), 1, 2,
                                                  60'000'000);
  REQUIRE(r.found);
  CHECK(r.sizeA == 1);
  CHECK(r.sizeB == 2);
  CHECK(r.sizeC == 2);
  CHECK(r.lawfulLeft == 2);
  CHECK(r.lawfulRight == 120);
  CHECK(r.pairsTried == 8);
  CHECK(r.violation.law == "MPutGet0");
  CHECK(r.violation.where ==
        decltype(r.violation.where){{"a", "a0"}, {"b", "c0"}});

  // the found left lens, by value: mget a0 reads the flag into the view,
  // puts write the view into the flag
  EffectValue g = r.left.mget(0);
  CHECK(g.table == decltype(g.table){{0, 0}, {1, 1}});
  CHECK(r.left.mput(0, 0).table == decltype(g.table){{0, 0}, {0, 0}});
  CHECK(r.left.mput(0, 1).table == decltype(g.table){{0, 1}, {0, 1}});
  CHECK(r.leftText ==
        "mget {a0 -> {F -> (b0,F); T -> (b1,T)}} "
        "mput {(a0,b0) -> {F -> (a0,F); T -> (a0,F)}; "
        "(a0,b1) -> {F -> (a0,T); T -> (a0,T)}}");

  // both components are individually lawful and the composite reproduces
  // the reported violation
  CHECK(checkNaiveLaws(r.left).pass());
  CHECK(checkNaiveLaws(r.right).pass());
  LawReport again = checkNaiveLaws(composeNaive(r.left, r.right));
  REQUIRE(again.hasLaw("MPutGet0"));
  CHECK(again.firstOf("MPutGet0")->where == r.violation.where);
}

TEST_CASE("no naive counterexample exists without effects") {
  NaiveSearchResult r =
      searchNaiveCounterexample(Effect::identity(), 2, 2, 60'000'000);
  CHECK(!r.found);
  CHECK(r.candidatesTried > 0);
}

TEST_CASE("the naive search respects its budget") {
  CHECK_THROWS_AS(searchNaiveCounterexample(Effect::state(boolC()), 1, 2, 100),
                  BoundExceeded);
}

TEST_CASE("put-lens laws for the builtins") {
  CHECK(checkPutLensLaws(asPutLens(absLens(2))).pass());
  CarrierPtr s = Carrier::make("S", {"s0", "s1"});
  CHECK(checkPutLensLaws(asPutLens(constMLens(s, bits(), 0, 1))).pass());
}

TEST_CASE("put-lens checker needs a membership effect") {
  MLens m = lens2mlens(Effect::state(boolC()), bitFlip());
  CHECK_THROWS_AS(checkPutLensLaws(asPutLens(m)), UnsupportedMembership);
}

TEST_CASE("put-lens checker flags a put that invents sources") {
  // over List: put returns both sources, one of which shows the wrong view
  MLens m = lens2mlens(Effect::list(), idLens(bits()));
  m.mput = [](int, int) {
    EffectValue r;
    r.items = {0, 1};
    return r;
  };
  LawReport r = checkPutLensLaws(asPutLens(m));
  CHECK(!r.pass());
  CHECK(r.hasLaw("MPutGet1"));
}
