#include "bxlens/equivalence.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

namespace bxlens {

namespace {

void requireSameEffect(const EffectPtr& a, const EffectPtr& b,
                       const std::string& context) {
  if (!a || !b || !a->same(*b))
    throw TagMismatch(context + ": effect tags differ");
}

void tagViolations(LawReport& into, const LawReport& from,
                   const std::string& key, const std::string& value) {
  for (auto v : from.violations) {
    v.where.insert(v.where.begin(), {key, value});
    into.violations.push_back(std::move(v));
  }
}

/// First pointwise difference between two lenses sharing carriers, one
/// violation per operation.
void compareMLens(LawReport& report, const MLens& a, const MLens& b,
                  const std::string& prefix) {
  const Effect& e = *a.effect;
  const Carrier& src = *a.source;
  const Carrier& view = *a.view;
  for (int s = 0; s < src.size(); ++s) {
    if (a.mget(s) != b.mget(s)) {
      report.violations.push_back({prefix + "Get",
                                   {{"s", src.elem(s)}},
                                   view.elem(a.mget(s)),
                                   view.elem(b.mget(s)),
                                   ""});
      break;
    }
  }
  bool broken = false;
  for (int s = 0; s < src.size() && !broken; ++s)
    for (int v = 0; v < view.size() && !broken; ++v) {
      EffectValue lhs = a.mput(s, v);
      EffectValue rhs = b.mput(s, v);
      if (!effectEq(e, lhs, rhs)) {
        report.violations.push_back({prefix + "Put",
                                     {{"s", src.elem(s)}, {"v", view.elem(v)}},
                                     renderEffect(e, src, lhs),
                                     renderEffect(e, src, rhs),
                                     ""});
        broken = true;
      }
    }
  if (a.hasCreate() != b.hasCreate()) {
    report.violations.push_back({prefix + "Create",
                                 {},
                                 a.hasCreate() ? "defined" : "missing",
                                 b.hasCreate() ? "defined" : "missing",
                                 "create defined on one side only"});
    return;
  }
  if (a.hasCreate())
    for (int v = 0; v < view.size(); ++v) {
      EffectValue lhs = a.mcreate(v);
      EffectValue rhs = b.mcreate(v);
      if (!effectEq(e, lhs, rhs)) {
        report.violations.push_back({prefix + "Create",
                                     {{"v", view.elem(v)}},
                                     renderEffect(e, src, lhs),
                                     renderEffect(e, src, rhs),
                                     ""});
        break;
      }
    }
}

void comparePure(LawReport& report, const PureLens& a, const PureLens& b,
                 const std::string& prefix) {
  const Carrier& src = *a.source;
  const Carrier& view = *a.view;
  for (int s = 0; s < src.size(); ++s) {
    if (a.get(s) != b.get(s)) {
      report.violations.push_back({prefix + "Get",
                                   {{"s", src.elem(s)}},
                                   view.elem(a.get(s)),
                                   view.elem(b.get(s)),
                                   ""});
      break;
    }
  }
  bool broken = false;
  for (int s = 0; s < src.size() && !broken; ++s)
    for (int v = 0; v < view.size() && !broken; ++v)
      if (a.put(s, v) != b.put(s, v)) {
        report.violations.push_back({prefix + "Put",
                                     {{"s", src.elem(s)}, {"v", view.elem(v)}},
                                     src.elem(a.put(s, v)),
                                     src.elem(b.put(s, v)),
                                     ""});
        broken = true;
      }
  if (a.full() && b.full()) {
    for (int v = 0; v < view.size(); ++v)
      if (a.create(v) != b.create(v)) {
        report.violations.push_back({prefix + "Create",
                                     {{"v", view.elem(v)}},
                                     src.elem(a.create(v)),
                                     src.elem(b.create(v)),
                                     ""});
        break;
      }
  } else if (a.full() != b.full()) {
    report.violations.push_back({prefix + "Create",
                                 {},
                                 a.full() ? "defined" : "missing",
                                 b.full() ? "defined" : "missing",
                                 "create defined on one side only"});
  }
}

void requireAlignedSpans(const Span& sp1, const Span& sp2,
                         const std::string& context) {
  requireSameEffect(sp1.effect(), sp2.effect(), context);
  requireSameCarrier(sp1.left.view, sp2.left.view, context);
  requireSameCarrier(sp1.right.view, sp2.right.view, context);
}

PureLens isoLens(const Span& sp1, const Span& sp2, const IsoWitness& w) {
  PureLens h;
  h.source = sp1.state;
  h.view = sp2.state;
  auto fwd = w.h;
  auto bwd = w.hInv;
  h.get = [fwd](int s) { return fwd.at(s); };
  h.put = [bwd](int, int s2) { return bwd.at(s2); };
  h.create = [bwd](int s2) { return bwd.at(s2); };
  h.name = "iso";
  return h;
}

}  // namespace

LawReport checkBaseMap(const BaseMap& h, const MLens& l1, const MLens& l2) {
  requireSameEffect(l1.effect, l2.effect, "checkBaseMap");
  requireSameCarrier(l1.view, l2.view, "checkBaseMap");
  if (static_cast<int>(h.size()) != l1.source->size())
    throw CarrierMismatch("checkBaseMap: base map size " +
                          std::to_string(h.size()) + " does not cover " +
                          l1.source->name());
  for (int s : h)
    if (s < 0 || s >= l2.source->size())
      throw CarrierMismatch("checkBaseMap: base map image outside " +
                            l2.source->name());

  LawReport report;
  const Effect& e = *l1.effect;
  const Carrier& S1 = *l1.source;
  const Carrier& S2 = *l2.source;
  const Carrier& V = *l1.view;
  auto hf = [&h](int s) { return h[s]; };

  for (int s = 0; s < S1.size(); ++s) {
    if (l1.mget(s) != l2.mget(h[s])) {
      report.violations.push_back({"BaseMapGet",
                                   {{"s", S1.elem(s)}},
                                   V.elem(l1.mget(s)),
                                   V.elem(l2.mget(h[s])),
                                   ""});
      break;
    }
  }

  bool broken = false;
  for (int s = 0; s < S1.size() && !broken; ++s)
    for (int v = 0; v < V.size() && !broken; ++v) {
      EffectValue lhs = mapEffect(e, l1.mput(s, v), hf);
      EffectValue rhs = l2.mput(h[s], v);
      if (!effectEq(e, lhs, rhs)) {
        report.violations.push_back({"BaseMapPut",
                                     {{"s", S1.elem(s)}, {"v", V.elem(v)}},
                                     renderEffect(e, S2, lhs),
                                     renderEffect(e, S2, rhs),
                                     ""});
        broken = true;
      }
    }

  if (l1.hasCreate() != l2.hasCreate()) {
    report.violations.push_back({"BaseMapCreate",
                                 {},
                                 l1.hasCreate() ? "defined" : "missing",
                                 l2.hasCreate() ? "defined" : "missing",
                                 "create defined on one side only"});
  } else if (l1.hasCreate()) {
    for (int v = 0; v < V.size(); ++v) {
      EffectValue lhs = mapEffect(e, l1.mcreate(v), hf);
      EffectValue rhs = l2.mcreate(v);
      if (!effectEq(e, lhs, rhs)) {
        report.violations.push_back({"BaseMapCreate",
                                     {{"v", V.elem(v)}},
                                     renderEffect(e, S2, lhs),
                                     renderEffect(e, S2, rhs),
                                     ""});
        break;
      }
    }
  }
  return report;
}

LawReport verifyEquivalence(const Span& sp1, const Span& sp2,
                            const IsoWitness& w) {
  requireAlignedSpans(sp1, sp2, "verifyEquivalence(iso)");
  LawReport report;
  const int n1 = sp1.state->size();
  const int n2 = sp2.state->size();
  if (n1 != n2) {
    report.violations.push_back({"IsoSize",
                                 {},
                                 std::to_string(n1),
                                 std::to_string(n2),
                                 "state spaces have different cardinality"});
    return report;
  }
  if (static_cast<int>(w.h.size()) != n1 ||
      static_cast<int>(w.hInv.size()) != n2)
    throw CarrierMismatch("verifyEquivalence(iso): witness tables do not "
                          "cover the state spaces");
  for (int s = 0; s < n1; ++s)
    if (w.hInv.at(w.h.at(s)) != s || w.h.at(w.hInv.at(s)) != s) {
      report.violations.push_back(
          {"IsoInverse",
           {{"s", sp1.state->elem(s)}},
           sp1.state->elem(w.hInv.at(w.h.at(s))),
           sp1.state->elem(s),
           "h and hInv are not mutually inverse"});
      return report;
    }

  MLens lifted = lens2mlens(sp1.effect(), isoLens(sp1, sp2, w));
  compareMLens(report, composeM(lifted, sp2.left), sp1.left, "LeftLeg");
  compareMLens(report, composeM(lifted, sp2.right), sp1.right, "RightLeg");
  return report;
}

LawReport verifyEquivalence(const Span& sp1, const Span& sp2,
                            const SpanEquivWitness& w) {
  requireAlignedSpans(sp1, sp2, "verifyEquivalence(span)");
  const Span& from = w.direction == Direction::Forward ? sp1 : sp2;
  const Span& to = w.direction == Direction::Forward ? sp2 : sp1;
  requireSameCarrier(w.h.source, from.state, "verifyEquivalence(span)");
  requireSameCarrier(w.h.view, to.state, "verifyEquivalence(span)");

  LawReport report;
  if (!w.h.full()) {
    report.violations.push_back({"WitnessCreate",
                                 {},
                                 "missing",
                                 "defined",
                                 "the witness lens must be full"});
    return report;
  }
  tagViolations(report, checkPureLaws(w.h), "witness", "h");

  MLens lifted = lens2mlens(from.effect(), w.h);
  compareMLens(report, composeM(lifted, to.left), from.left, "LeftLeg");
  compareMLens(report, composeM(lifted, to.right), from.right, "RightLeg");
  return report;
}

LawReport verifyEquivalence(const Span& sp1, const Span& sp2,
                            const BisimWitness& w) {
  requireAlignedSpans(sp1, sp2, "verifyEquivalence(bisim)");
  requireSameEffect(sp1.effect(), w.span.effect(), "verifyEquivalence(bisim)");
  LawReport report;
  if (w.relation->parents().size() != 2 ||
      !carrierEq(w.relation->parents()[0], sp1.state) ||
      !carrierEq(w.relation->parents()[1], sp2.state)) {
    report.violations.push_back({"RelationShape",
                                 {},
                                 w.relation->name(),
                                 sp1.state->name() + " x " + sp2.state->name(),
                                 "relation is not a pair carrier over the "
                                 "two state spaces"});
    return report;
  }
  if (!carrierEq(w.span.state, w.relation)) {
    report.violations.push_back({"RelationShape",
                                 {},
                                 w.span.state->name(),
                                 w.relation->name(),
                                 "the witness span must live over R"});
    return report;
  }
  BaseMap fst(w.relation->size()), snd(w.relation->size());
  for (int r = 0; r < w.relation->size(); ++r) {
    fst[r] = w.relation->comps(r)[0];
    snd[r] = w.relation->comps(r)[1];
  }
  tagViolations(report, checkBaseMap(fst, w.span.left, sp1.left), "map",
                "fst/left");
  tagViolations(report, checkBaseMap(fst, w.span.right, sp1.right), "map",
                "fst/right");
  tagViolations(report, checkBaseMap(snd, w.span.left, sp2.left), "map",
                "snd/left");
  tagViolations(report, checkBaseMap(snd, w.span.right, sp2.right), "map",
                "snd/right");
  return report;
}

std::optional<IsoWitness> searchIsoEquivalence(const Span& sp1, const Span& sp2,
                                               long long budget) {
  requireAlignedSpans(sp1, sp2, "searchIsoEquivalence");
  const int n = sp1.state->size();
  if (n != sp2.state->size()) return std::nullopt;
  long long perms = 1;
  for (int i = 2; i <= n; ++i) {
    perms *= i;
    if (perms > budget)
      throw BoundExceeded("iso search: " + std::to_string(n) +
                          "! permutations exceed budget " +
                          std::to_string(budget));
  }
  std::vector<int> h(n);
  std::iota(h.begin(), h.end(), 0);
  do {
    IsoWitness w;
    w.h = h;
    w.hInv.assign(n, 0);
    for (int i = 0; i < n; ++i) w.hInv[h[i]] = i;
    if (verifyEquivalence(sp1, sp2, w).pass()) return w;
  } while (std::next_permutation(h.begin(), h.end()));
  return std::nullopt;
}

namespace {

/// Searches a full pure lens h : from.state -> to.state whose lifting
/// precomposed with to's legs recovers from's legs. Gets are drawn from the
/// pointwise leg-get solutions, puts and creates from the lens-law fibers.
std::optional<PureLens> searchDirectedSpanWitness(const Span& from,
                                                  const Span& to,
                                                  long long budget,
                                                  long long& work) {
  const Effect& e = *from.effect();
  const int n1 = from.state->size();
  const int n2 = to.state->size();
  if ((from.left.hasCreate() != to.left.hasCreate()) ||
      (from.right.hasCreate() != to.right.hasCreate()))
    return std::nullopt;

  std::vector<std::vector<int>> getCands(n1);
  for (int s1 = 0; s1 < n1; ++s1) {
    for (int s2 = 0; s2 < n2; ++s2)
      if (to.left.mget(s2) == from.left.mget(s1) &&
          to.right.mget(s2) == from.right.mget(s1))
        getCands[s1].push_back(s2);
    if (getCands[s1].empty()) return std::nullopt;
  }

  auto bump = [&work, budget]() {
    if (++work > budget)
      throw BoundExceeded("span witness search exceeds budget " +
                          std::to_string(budget));
  };

  std::vector<int> gPick(n1, 0);
  std::vector<int> g(n1);
  while (true) {
    bump();
    for (int s1 = 0; s1 < n1; ++s1) g[s1] = getCands[s1][gPick[s1]];

    // full lenses need surjective gets
    std::vector<std::vector<int>> fiber(n2);
    for (int s1 = 0; s1 < n1; ++s1) fiber[g[s1]].push_back(s1);
    bool surjective = true;
    for (int s2 = 0; s2 < n2; ++s2)
      if (fiber[s2].empty()) surjective = false;

    if (surjective) {
      // put cells: p[s1][s2] from fiber[s2], diagonal forced to s1
      std::vector<int> pPick(static_cast<size_t>(n1) * n2, 0);
      auto putTable = [&](std::vector<int>& p) {
        for (int s1 = 0; s1 < n1; ++s1)
          for (int s2 = 0; s2 < n2; ++s2)
            p[s1 * n2 + s2] =
                s2 == g[s1] ? s1 : fiber[s2][pPick[s1 * n2 + s2]];
      };
      std::vector<int> p(static_cast<size_t>(n1) * n2);
      bool putsLeft = true;
      while (putsLeft) {
        bump();
        putTable(p);
        bool putOk = true;
        for (int s1 = 0; s1 < n1 && putOk; ++s1) {
          for (int a = 0; a < from.left.view->size() && putOk; ++a) {
            EffectValue lhs = bind(e, to.left.mput(g[s1], a), [&](int s2p) {
              return ret(e, p[s1 * n2 + s2p]);
            });
            putOk = effectEq(e, lhs, from.left.mput(s1, a));
          }
          for (int b = 0; b < from.right.view->size() && putOk; ++b) {
            EffectValue lhs = bind(e, to.right.mput(g[s1], b), [&](int s2p) {
              return ret(e, p[s1 * n2 + s2p]);
            });
            putOk = effectEq(e, lhs, from.right.mput(s1, b));
          }
        }
        if (putOk) {
          // create cells from the same fibers
          std::vector<int> cPick(n2, 0);
          bool createsLeft = true;
          while (createsLeft) {
            bump();
            std::vector<int> c(n2);
            for (int s2 = 0; s2 < n2; ++s2) c[s2] = fiber[s2][cPick[s2]];
            bool createOk = true;
            if (from.left.hasCreate())
              for (int a = 0; a < from.left.view->size() && createOk; ++a) {
                EffectValue lhs = bind(e, to.left.mcreate(a), [&](int s2p) {
                  return ret(e, c[s2p]);
                });
                createOk = effectEq(e, lhs, from.left.mcreate(a));
              }
            if (from.right.hasCreate())
              for (int b = 0; b < from.right.view->size() && createOk; ++b) {
                EffectValue lhs = bind(e, to.right.mcreate(b), [&](int s2p) {
                  return ret(e, c[s2p]);
                });
                createOk = effectEq(e, lhs, from.right.mcreate(b));
              }
            if (createOk) {
              PureLens h;
              h.source = from.state;
              h.view = to.state;
              h.get = [g](int s) { return g.at(s); };
              h.put = [p, n2](int s, int v) { return p.at(s * n2 + v); };
              h.create = [c](int v) { return c.at(v); };
              h.name = "witness";
              return h;
            }
            int i = n2 - 1;
            while (i >= 0 &&
                   cPick[i] + 1 >= static_cast<int>(fiber[i].size()))
              cPick[i--] = 0;
            if (i < 0)
              createsLeft = false;
            else
              ++cPick[i];
          }
        }
        // advance put odometer over non-diagonal cells
        int cell = n1 * n2 - 1;
        while (cell >= 0) {
          int s1 = cell / n2, s2 = cell % n2;
          if (s2 != g[s1] &&
              pPick[cell] + 1 < static_cast<int>(fiber[s2].size())) {
            ++pPick[cell];
            break;
          }
          pPick[cell--] = 0;
        }
        if (cell < 0) putsLeft = false;
      }
    }

    int i = n1 - 1;
    while (i >= 0 && gPick[i] + 1 >= static_cast<int>(getCands[i].size()))
      gPick[i--] = 0;
    if (i < 0) break;
    ++gPick[i];
  }
  return std::nullopt;
}

}  // namespace

std::optional<SpanEquivWitness> searchSpanEquivalence(const Span& sp1,
                                                      const Span& sp2,
                                                      long long budget) {
  requireAlignedSpans(sp1, sp2, "searchSpanEquivalence");
  long long work = 0;
  if (auto h = searchDirectedSpanWitness(sp1, sp2, budget, work)) {
    SpanEquivWitness w{*h, Direction::Forward};
    if (verifyEquivalence(sp1, sp2, w).pass()) return w;
  }
  if (auto h = searchDirectedSpanWitness(sp2, sp1, budget, work)) {
    SpanEquivWitness w{*h, Direction::Backward};
    if (verifyEquivalence(sp1, sp2, w).pass()) return w;
  }
  return std::nullopt;
}

std::optional<BisimWitness> searchBisimEquivalence(const Span& sp1,
                                                   const Span& sp2,
                                                   long long budget) {
  requireAlignedSpans(sp1, sp2, "searchBisimEquivalence");
  if (!sp1.left.hasCreate() || !sp1.right.hasCreate() ||
      !sp2.left.hasCreate() || !sp2.right.hasCreate())
    return std::nullopt;
  const long long space =
      static_cast<long long>(sp1.state->size()) * sp2.state->size();
  if (space > budget)
    throw BoundExceeded("bisim search: relation space " +
                        std::to_string(space) + " exceeds budget " +
                        std::to_string(budget));

  const Effect& e = *sp1.effect();
  std::set<std::pair<int, int>> rel;
  std::vector<std::pair<int, int>> queue;
  bool refuted = false;
  auto add = [&](int s1, int s2) {
    if (sp1.left.mget(s1) != sp2.left.mget(s2) ||
        sp1.right.mget(s1) != sp2.right.mget(s2)) {
      refuted = true;
      return 0;
    }
    if (rel.insert({s1, s2}).second) queue.push_back({s1, s2});
    return 0;
  };
  auto zipInto = [&](const EffectValue& m1, const EffectValue& m2) {
    if (refuted) return;
    if (!zipEffect(e, m1, m2, add)) refuted = true;
  };

  for (int a = 0; a < sp1.left.view->size(); ++a)
    zipInto(sp1.left.mcreate(a), sp2.left.mcreate(a));
  for (int b = 0; b < sp1.right.view->size(); ++b)
    zipInto(sp1.right.mcreate(b), sp2.right.mcreate(b));
  while (!queue.empty() && !refuted) {
    auto [s1, s2] = queue.back();
    queue.pop_back();
    for (int a = 0; a < sp1.left.view->size(); ++a)
      zipInto(sp1.left.mput(s1, a), sp2.left.mput(s2, a));
    for (int b = 0; b < sp1.right.view->size(); ++b)
      zipInto(sp1.right.mput(s1, b), sp2.right.mput(s2, b));
  }
  if (refuted) return std::nullopt;

  CarrierPtr R = Carrier::filteredProduct(
      "bisim(" + sp1.state->name() + "," + sp2.state->name() + ")", sp1.state,
      sp2.state,
      [&rel](int s1, int s2) { return rel.count({s1, s2}) > 0; });

  EffectPtr tag = sp1.effect();
  auto mkLeg = [&](const MLens& leg1, const MLens& leg2) {
    MLens leg;
    leg.effect = tag;
    leg.source = R;
    leg.view = leg1.view;
    leg.name = "bisim." + leg1.name;
    leg.mget = [R, leg1](int r) { return leg1.mget(R->comps(r)[0]); };
    auto pairUp = [R](int s1, int s2) {
      int i = R->indexOfComps({s1, s2});
      if (i < 0)
        throw ConsistencyViolation("bisim span reached a pair outside R");
      return i;
    };
    leg.mput = [R, leg1, leg2, tag, pairUp](int r, int v) {
      auto z = zipEffect(*tag, leg1.mput(R->comps(r)[0], v),
                         leg2.mput(R->comps(r)[1], v), pairUp);
      if (!z)
        throw ConsistencyViolation("bisim span put admits no canonical pairing");
      return *z;
    };
    leg.mcreate = [leg1, leg2, tag, pairUp](int v) {
      auto z = zipEffect(*tag, leg1.mcreate(v), leg2.mcreate(v), pairUp);
      if (!z)
        throw ConsistencyViolation(
            "bisim span create admits no canonical pairing");
      return *z;
    };
    return leg;
  };

  BisimWitness w;
  w.relation = R;
  w.span.state = R;
  w.span.left = mkLeg(sp1.left, sp2.left);
  w.span.right = mkLeg(sp1.right, sp2.right);
  w.span.name = "bisim(" + sp1.name + "," + sp2.name + ")";
  if (!verifyEquivalence(sp1, sp2, w).pass()) return std::nullopt;
  return w;
}

SpanEquivWitness isoToSpanWitness(const Span& sp1, const Span& sp2,
                                  const IsoWitness& w) {
  return {isoLens(sp1, sp2, w), Direction::Forward};
}

BisimWitness bisimFromSpanWitness(const Span& sp1, const Span& sp2,
                                  const SpanEquivWitness& w) {
  LawReport pre = verifyEquivalence(sp1, sp2, w);
  if (!pre.pass())
    throw InvalidWitness("span witness does not verify: " +
                         pre.violations.front().describe());

  const bool fwd = w.direction == Direction::Forward;
  auto g = w.h.get;
  CarrierPtr R = Carrier::filteredProduct(
      "graph(" + w.h.name + ")", sp1.state, sp2.state,
      [g, fwd](int s1, int s2) { return fwd ? g(s1) == s2 : g(s2) == s1; });
  EffectPtr tag = sp1.effect();
  // the span driving the construction is the one the witness maps out of
  const Span& base = fwd ? sp1 : sp2;
  const int comp = fwd ? 0 : 1;

  auto mkLeg = [&](const MLens& leg1) {
    MLens leg;
    leg.effect = tag;
    leg.source = R;
    leg.view = leg1.view;
    leg.name = "graph." + leg1.name;
    leg.mget = [R, leg1, comp](int r) { return leg1.mget(R->comps(r)[comp]); };
    auto reattach = [R, g, fwd](int sp) {
      return fwd ? R->indexOfComps({sp, g(sp)}) : R->indexOfComps({g(sp), sp});
    };
    leg.mput = [R, leg1, tag, reattach, comp](int r, int v) {
      return bind(*tag, leg1.mput(R->comps(r)[comp], v),
                  [&](int sp) { return ret(*tag, reattach(sp)); });
    };
    if (leg1.hasCreate())
      leg.mcreate = [leg1, tag, reattach](int v) {
        return bind(*tag, leg1.mcreate(v),
                    [&](int sp) { return ret(*tag, reattach(sp)); });
      };
    return leg;
  };

  BisimWitness bw;
  bw.relation = R;
  bw.span.state = R;
  bw.span.left = mkLeg(base.left);
  bw.span.right = mkLeg(base.right);
  bw.span.name = "bisim(graph)";
  return bw;
}

PureSpanWitness spanWitnessFromBisim(const Span& sp1, const Span& sp2,
                                     const BisimWitness& w) {
  if (sp1.effect()->kind() != EffectKind::Identity ||
      sp2.effect()->kind() != EffectKind::Identity ||
      w.span.effect()->kind() != EffectKind::Identity)
    throw NonPureInput("spanWitnessFromBisim handles identity-effect spans only");
  LawReport pre = verifyEquivalence(sp1, sp2, w);
  if (!pre.pass())
    throw InvalidWitness("bisimulation witness does not verify: " +
                         pre.violations.front().describe());
  if (!w.span.left.hasCreate())
    throw InvalidWitness("the bisimulation span needs a create on its left leg");

  PureLens l0 = toPure(w.span.left);
  PureLens l1 = toPure(sp1.left);
  PureLens l2 = toPure(sp2.left);
  CarrierPtr R = w.relation;

  PureSpanWitness out;
  out.l.source = R;
  out.l.view = sp1.state;
  out.l.name = "fromBisim.l";
  out.l.get = [R](int r) { return R->comps(r)[0]; };
  out.l.put = [l0, l1](int r, int s1n) { return l0.put(r, l1.get(s1n)); };
  out.l.create = [l0, l1](int s1) { return l0.create(l1.get(s1)); };

  out.r.source = R;
  out.r.view = sp2.state;
  out.r.name = "fromBisim.r";
  out.r.get = [R](int r) { return R->comps(r)[1]; };
  out.r.put = [l0, l2](int r, int s2n) { return l0.put(r, l2.get(s2n)); };
  out.r.create = [l0, l2](int s2) { return l0.create(l2.get(s2)); };

  tagViolations(out.post, checkPureLaws(out.l), "witness", "l");
  tagViolations(out.post, checkPureLaws(out.r), "witness", "r");
  comparePure(out.post, composePure(out.l, toPure(sp1.left)),
              composePure(out.r, toPure(sp2.left)), "ViewA");
  comparePure(out.post, composePure(out.l, toPure(sp1.right)),
              composePure(out.r, toPure(sp2.right)), "ViewB");
  return out;
}

Span normalizeEquivChain(const Span& first,
                         const std::vector<ChainStep>& steps) {
  auto requirePure = [](const Span& sp) {
    if (sp.effect()->kind() != EffectKind::Identity)
      throw InvalidChain("chain spans must be pure (identity effect)");
  };
  requirePure(first);
  for (const auto& st : steps) requirePure(st.span);

  const Span* prev = &first;
  for (const auto& st : steps) {
    LawReport r = verifyEquivalence(*prev, st.span, st.witness);
    if (!r.pass())
      throw InvalidChain("chain step does not verify: " +
                         r.violations.front().describe());
    prev = &st.span;
  }

  std::function<PureSpan(const Span&, size_t)> collapse =
      [&](const Span& sp, size_t i) -> PureSpan {
    if (i == steps.size()) {
      PureSpan ps;
      ps.state = sp.state;
      ps.left = idLens(sp.state);
      ps.right = idLens(sp.state);
      return ps;
    }
    PureSpan tail = collapse(steps[i].span, i + 1);
    const SpanEquivWitness& w = steps[i].witness;
    PureSpan ps;
    if (w.direction == Direction::Backward) {
      ps.state = tail.state;
      ps.left = composePure(tail.left, w.h);
      ps.right = tail.right;
      return ps;
    }
    PureSpan joined = joinPure(w.h, tail.left);
    ps.state = joined.state;
    ps.left = joined.left;
    ps.right = composePure(joined.right, tail.right);
    return ps;
  };

  PureSpan ps = collapse(first, 0);
  const Span& last = steps.empty() ? first : steps.back().span;
  LawReport check;
  comparePure(check, composePure(ps.left, toPure(first.left)),
              composePure(ps.right, toPure(last.left)), "ViewA");
  comparePure(check, composePure(ps.left, toPure(first.right)),
              composePure(ps.right, toPure(last.right)), "ViewB");
  if (!check.pass())
    throw InvalidChain("normalized span fails its commuting equations: " +
                       check.violations.front().describe());

  Span out = liftPureSpan(first.effect(), ps);
  out.name = "normalized";
  return out;
}

}  // namespace bxlens
