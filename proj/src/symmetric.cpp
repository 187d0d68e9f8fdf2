#include "bxlens/symmetric.hpp"

#include <algorithm>
#include <set>

namespace bxlens {

namespace {

void requireSameEffect(const EffectPtr& a, const EffectPtr& b,
                       const std::string& context) {
  if (!a || !b || !a->same(*b))
    throw TagMismatch(context + ": effect tags differ");
}

}  // namespace

SLens idSLens(const CarrierPtr& values) {
  SLens sl;
  sl.left = values;
  sl.right = values;
  sl.complement = Carrier::unit();
  sl.putR = [](int a, int) { return std::pair{a, 0}; };
  sl.putL = [](int b, int) { return std::pair{b, 0}; };
  sl.missing = 0;
  sl.name = "id[" + values->name() + "]";
  return sl;
}

SLens composeS(const SLens& sl1, const SLens& sl2) {
  requireSameCarrier(sl1.right, sl2.left, "composeS");
  SLens sl;
  sl.left = sl1.left;
  sl.right = sl2.right;
  sl.complement = Carrier::product(sl1.complement, sl2.complement);
  const int k2 = sl2.complement->size();
  sl.putR = [sl1, sl2, k2](int a, int c) {
    auto [b, c1] = sl1.putR(a, c / k2);
    auto [r, c2] = sl2.putR(b, c % k2);
    return std::pair{r, c1 * k2 + c2};
  };
  sl.putL = [sl1, sl2, k2](int r, int c) {
    auto [b, c2] = sl2.putL(r, c % k2);
    auto [a, c1] = sl1.putL(b, c / k2);
    return std::pair{a, c1 * k2 + c2};
  };
  sl.missing = sl1.missing * k2 + sl2.missing;
  sl.name = sl1.name + ";" + sl2.name;
  return sl;
}

SMLens composeSM(const SMLens& sl1, const SMLens& sl2) {
  requireSameEffect(sl1.effect, sl2.effect, "composeSM");
  requireSameCarrier(sl1.right, sl2.left, "composeSM");
  SMLens sl;
  sl.effect = sl1.effect;
  sl.left = sl1.left;
  sl.right = sl2.right;
  sl.complement = Carrier::product(sl1.complement, sl2.complement);
  const int k1 = sl1.complement->size();
  const int k2 = sl2.complement->size();
  const int k = k1 * k2;
  sl.mputR = [sl1, sl2, k1, k2, k](int a, int c) {
    const Effect& e = *sl1.effect;
    return bind(e, sl1.mputR(a, c / k2), [&, c](int bc1) {
      const int b = bc1 / k1, c1 = bc1 % k1;
      return bind(e, sl2.mputR(b, c % k2), [&, c1](int rc2) {
        const int r = rc2 / k2, c2 = rc2 % k2;
        return ret(e, r * k + (c1 * k2 + c2));
      });
    });
  };
  sl.mputL = [sl1, sl2, k1, k2, k](int r, int c) {
    const Effect& e = *sl1.effect;
    return bind(e, sl2.mputL(r, c % k2), [&, c](int bc2) {
      const int b = bc2 / k2, c2 = bc2 % k2;
      return bind(e, sl1.mputL(b, c / k2), [&, c2](int ac1) {
        const int a = ac1 / k1, c1 = ac1 % k1;
        return ret(e, a * k + (c1 * k2 + c2));
      });
    });
  };
  sl.missing = sl1.missing * k2 + sl2.missing;
  sl.name = sl1.name + ";" + sl2.name;
  return sl;
}

SMLens liftSLens(const EffectPtr& tag, const SLens& sl) {
  SMLens m;
  m.effect = tag;
  m.left = sl.left;
  m.right = sl.right;
  m.complement = sl.complement;
  const int k = sl.complement->size();
  EffectPtr e = tag;
  auto putR = sl.putR;
  auto putL = sl.putL;
  m.mputR = [e, putR, k](int a, int c) {
    auto [b, c2] = putR(a, c);
    return ret(*e, b * k + c2);
  };
  m.mputL = [e, putL, k](int b, int c) {
    auto [a, c2] = putL(b, c);
    return ret(*e, a * k + c2);
  };
  m.missing = sl.missing;
  m.name = sl.name;
  return m;
}

SMLens setBool(bool b) {
  SMLens m;
  m.effect = Effect::state(Carrier::make("bool", {"F", "T"}));
  m.left = Carrier::unit();
  m.right = Carrier::unit();
  m.complement = Carrier::unit();
  const int target = b ? 1 : 0;
  EffectPtr e = m.effect;
  auto setAndReturn = [e, target](int, int) {
    EffectValue r;
    for (int s = 0; s < e->stateDom()->size(); ++s)
      r.table.push_back({0, target});
    return r;
  };
  m.mputR = setAndReturn;
  m.mputL = setAndReturn;
  m.name = b ? "setBool T" : "setBool F";
  return m;
}

SMLens failLens() {
  SMLens m;
  m.effect = Effect::maybe();
  m.left = Carrier::unit();
  m.right = Carrier::unit();
  m.complement = Carrier::unit();
  m.mputR = [](int, int) { return EffectValue{}; };
  m.mputL = [](int, int) { return EffectValue{}; };
  m.name = "fail";
  return m;
}

LawReport checkSymmetricLaws(const SLens& sl) {
  LawReport report;
  const Carrier& A = *sl.left;
  const Carrier& B = *sl.right;
  const Carrier& C = *sl.complement;

  bool broken = false;
  for (int a = 0; a < A.size() && !broken; ++a)
    for (int c = 0; c < C.size() && !broken; ++c) {
      auto [b, c1] = sl.putR(a, c);
      auto [a2, c2] = sl.putL(b, c1);
      if (a2 != a || c2 != c1) {
        report.violations.push_back(
            {"PutRL",
             {{"a", A.elem(a)}, {"c", C.elem(c)}},
             "(" + A.elem(a2) + "," + C.elem(c2) + ")",
             "(" + A.elem(a) + "," + C.elem(c1) + ")",
             ""});
        broken = true;
      }
    }

  broken = false;
  for (int b = 0; b < B.size() && !broken; ++b)
    for (int c = 0; c < C.size() && !broken; ++c) {
      auto [a, c1] = sl.putL(b, c);
      auto [b2, c2] = sl.putR(a, c1);
      if (b2 != b || c2 != c1) {
        report.violations.push_back(
            {"PutLR",
             {{"b", B.elem(b)}, {"c", C.elem(c)}},
             "(" + B.elem(b2) + "," + C.elem(c2) + ")",
             "(" + B.elem(b) + "," + C.elem(c1) + ")",
             ""});
        broken = true;
      }
    }
  return report;
}

LawReport checkSymmetricLaws(const SMLens& sl) {
  LawReport report;
  const Effect& e = *sl.effect;
  const Carrier& A = *sl.left;
  const Carrier& B = *sl.right;
  const Carrier& C = *sl.complement;
  const int k = C.size();
  CarrierPtr rightPairs = Carrier::product(sl.right, sl.complement);
  CarrierPtr leftPairs = Carrier::product(sl.left, sl.complement);

  bool broken = false;
  for (int a = 0; a < A.size() && !broken; ++a)
    for (int c = 0; c < k && !broken; ++c) {
      EffectValue m = sl.mputR(a, c);
      EffectValue lhs =
          bind(e, m, [&](int bc) { return sl.mputL(bc / k, bc % k); });
      EffectValue rhs = bind(e, m, [&](int bc) {
        return ret(e, sl.leftPairIdx(a, bc % k));
      });
      if (!effectEq(e, lhs, rhs)) {
        report.violations.push_back({"PutRLM",
                                     {{"a", A.elem(a)}, {"c", C.elem(c)}},
                                     renderEffect(e, *leftPairs, lhs),
                                     renderEffect(e, *leftPairs, rhs),
                                     ""});
        broken = true;
      }
    }

  broken = false;
  for (int b = 0; b < B.size() && !broken; ++b)
    for (int c = 0; c < k && !broken; ++c) {
      EffectValue m = sl.mputL(b, c);
      EffectValue lhs =
          bind(e, m, [&](int ac) { return sl.mputR(ac / k, ac % k); });
      EffectValue rhs = bind(e, m, [&](int ac) {
        return ret(e, sl.rightPairIdx(b, ac % k));
      });
      if (!effectEq(e, lhs, rhs)) {
        report.violations.push_back({"PutLRM",
                                     {{"b", B.elem(b)}, {"c", C.elem(c)}},
                                     renderEffect(e, *rightPairs, lhs),
                                     renderEffect(e, *rightPairs, rhs),
                                     ""});
        broken = true;
      }
    }
  return report;
}

bool SLensEquivWitness::contains(int c1, int c2) const {
  return std::binary_search(pairs.begin(), pairs.end(), std::pair{c1, c2});
}

LawReport verifySLensEquiv(const SLens& sl1, const SLens& sl2,
                           const SLensEquivWitness& w) {
  requireSameCarrier(sl1.left, sl2.left, "verifySLensEquiv");
  requireSameCarrier(sl1.right, sl2.right, "verifySLensEquiv");
  LawReport report;
  const Carrier& C1 = *sl1.complement;
  const Carrier& C2 = *sl2.complement;

  if (!w.contains(sl1.missing, sl2.missing)) {
    report.violations.push_back(
        {"MissingPair",
         {{"c1", C1.elem(sl1.missing)}, {"c2", C2.elem(sl2.missing)}},
         "absent", "present", "the missing pair must belong to R"});
    return report;
  }

  for (const auto& [c1, c2] : w.pairs) {
    for (int x = 0; x < sl1.left->size(); ++x) {
      auto [y1, c1n] = sl1.putR(x, c1);
      auto [y2, c2n] = sl2.putR(x, c2);
      if (y1 != y2) {
        report.violations.push_back({"PutRValue",
                                     {{"x", sl1.left->elem(x)},
                                      {"c1", C1.elem(c1)},
                                      {"c2", C2.elem(c2)}},
                                     sl1.right->elem(y1),
                                     sl2.right->elem(y2),
                                     ""});
        return report;
      }
      if (!w.contains(c1n, c2n)) {
        report.violations.push_back({"PutRSuccessor",
                                     {{"x", sl1.left->elem(x)},
                                      {"c1", C1.elem(c1)},
                                      {"c2", C2.elem(c2)}},
                                     "(" + C1.elem(c1n) + "," + C2.elem(c2n) +
                                         ") not in R",
                                     "membership",
                                     ""});
        return report;
      }
    }
    for (int y = 0; y < sl1.right->size(); ++y) {
      auto [x1, c1n] = sl1.putL(y, c1);
      auto [x2, c2n] = sl2.putL(y, c2);
      if (x1 != x2) {
        report.violations.push_back({"PutLValue",
                                     {{"y", sl1.right->elem(y)},
                                      {"c1", C1.elem(c1)},
                                      {"c2", C2.elem(c2)}},
                                     sl1.left->elem(x1),
                                     sl2.left->elem(x2),
                                     ""});
        return report;
      }
      if (!w.contains(c1n, c2n)) {
        report.violations.push_back({"PutLSuccessor",
                                     {{"y", sl1.right->elem(y)},
                                      {"c1", C1.elem(c1)},
                                      {"c2", C2.elem(c2)}},
                                     "(" + C1.elem(c1n) + "," + C2.elem(c2n) +
                                         ") not in R",
                                     "membership",
                                     ""});
        return report;
      }
    }
  }
  return report;
}

std::optional<SLensEquivWitness> searchSLensEquiv(const SLens& sl1,
                                                  const SLens& sl2,
                                                  long long budget) {
  requireSameCarrier(sl1.left, sl2.left, "searchSLensEquiv");
  requireSameCarrier(sl1.right, sl2.right, "searchSLensEquiv");
  const long long space = static_cast<long long>(sl1.complement->size()) *
                          sl2.complement->size();
  if (space > budget)
    throw BoundExceeded("complement pair space " + std::to_string(space) +
                        " exceeds budget " + std::to_string(budget));

  std::set<std::pair<int, int>> relation;
  std::vector<std::pair<int, int>> work;
  auto push = [&](int c1, int c2) {
    if (relation.insert({c1, c2}).second) work.push_back({c1, c2});
  };
  push(sl1.missing, sl2.missing);
  while (!work.empty()) {
    auto [c1, c2] = work.back();
    work.pop_back();
    for (int x = 0; x < sl1.left->size(); ++x) {
      auto [y1, c1n] = sl1.putR(x, c1);
      auto [y2, c2n] = sl2.putR(x, c2);
      if (y1 != y2) return std::nullopt;
      push(c1n, c2n);
    }
    for (int y = 0; y < sl1.right->size(); ++y) {
      auto [x1, c1n] = sl1.putL(y, c1);
      auto [x2, c2n] = sl2.putL(y, c2);
      if (x1 != x2) return std::nullopt;
      push(c1n, c2n);
    }
  }
  SLensEquivWitness w;
  w.pairs.assign(relation.begin(), relation.end());
  return w;
}

}  // namespace bxlens
