#include "bxlens/errors.hpp"
#include "bxlens/lens_core.hpp"
#include "doctest.h"

using namespace bxlens;

namespace {

CarrierPtr abc() { return Carrier::make("A", {"x", "y", "z"}); }
CarrierPtr bits() { return Carrier::make("B", {"0", "1"}); }

// parity lens A -> B: x,z are even, y is odd; put moves within parity class
PureLens parity(const CarrierPtr& a, const CarrierPtr& b) {
  PureLens l;
  l.source = a;
  l.view = b;
  l.get = [](int s) { return s == 1 ? 1 : 0; };
  l.put = [](int s, int v) { return v == 1 ? 1 : (s == 2 ? 2 : 0); };
  l.create = [](int v) { return v == 1 ? 1 : 0; };
  l.name = "parity";
  return l;
}

}  // namespace

TEST_CASE("identity lens is lawful and full") {
  PureLens l = idLens(abc());
  CHECK(l.full());
  CHECK(checkPureLaws(l).pass());
  CHECK(l.put(0, 2) == 2);
}

TEST_CASE("fst lens projects a product") {
  CarrierPtr p = Carrier::product(bits(), abc());
  PureLens l = fstLens(p);
  CHECK(checkPureLaws(l).pass());
  CHECK(l.view->size() == 2);
  // put keeps the second component
  int s = p->indexOfComps({0, 2});
  CHECK(p->comps(l.put(s, 1)) == std::vector<int>{1, 2});
  // create picks the first second-component
  CHECK(p->comps(l.create(1)) == std::vector<int>{1, 0});
  CHECK_THROWS_AS(fstLens(abc()), std::invalid_argument);
}

TEST_CASE("composition preserves the laws and creates compose") {
  CarrierPtr a = abc();
  CarrierPtr b = bits();
  PureLens p = parity(a, b);
  REQUIRE(checkPureLaws(p).pass());
  PureLens n;  // negation on bits
  n.source = b;
  n.view = b;
  n.get = [](int v) { return 1 - v; };
  n.put = [](int, int v) { return 1 - v; };
  n.create = [](int v) { return 1 - v; };
  REQUIRE(checkPureLaws(n).pass());

  PureLens c = composePure(p, n);
  CHECK(checkPureLaws(c).pass());
  CHECK(c.full());
  CHECK(c.get(1) == 0);
  for (int v = 0; v < 2; ++v) CHECK(c.create(v) == p.create(n.create(v)));

  // dropping create on one side drops it on the composite
  PureLens n2 = n;
  n2.create = nullptr;
  CHECK(!composePure(p, n2).full());
}

TEST_CASE("composition rejects misaligned carriers") {
  CHECK_THROWS_AS(composePure(parity(abc(), bits()), parity(abc(), bits())),
                  CarrierMismatch);
}

TEST_CASE("each pure law is reported with its witness") {
  CarrierPtr b = bits();
  SUBCASE("GetPut") {
    PureLens l = idLens(b);
    l.put = [](int, int v) { return 1 - v; };  // ignores the source
    LawReport r = checkPureLaws(l);
    REQUIRE(r.hasLaw("GetPut"));
    const Violation* v = r.firstOf("GetPut");
    CHECK(v->where == decltype(v->where){{"s", "0"}});
    CHECK(v->lhs == "1");
    CHECK(v->rhs == "0");
  }
  SUBCASE("PutGet") {
    PureLens l = idLens(b);
    l.put = [](int s, int) { return s; };  // ignores the view
    LawReport r = checkPureLaws(l);
    REQUIRE(r.hasLaw("PutGet"));
    const Violation* v = r.firstOf("PutGet");
    CHECK(v->where == decltype(v->where){{"s", "0"}, {"v", "1"}});
  }
  SUBCASE("CreateGet") {
    PureLens l = idLens(b);
    l.create = [](int v) { return 1 - v; };
    LawReport r = checkPureLaws(l);
    CHECK(r.hasLaw("CreateGet"));
    CHECK(!r.hasLaw("GetPut"));
  }
}

TEST_CASE("a full lens over an empty source cannot realize views") {
  CarrierPtr none = Carrier::make("none", {});
  PureLens l;
  l.source = none;
  l.view = bits();
  l.get = [](int) { return 0; };
  l.put = [](int, int) { return 0; };
  l.create = [](int) { return 0; };
  LawReport r = checkPureLaws(l);
  REQUIRE(r.hasLaw("CreateGet"));
  CHECK(r.firstOf("CreateGet")->note ==
        "empty source cannot realize any view element");
}
