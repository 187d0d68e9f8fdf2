#include "bxlens/spans.hpp"

#include <stdexcept>

namespace bxlens {

namespace {

int requireMember(const CarrierPtr& carrier, const std::vector<int>& comps,
                  const std::string& context) {
  int idx = carrier->indexOfComps(comps);
  if (idx < 0) {
    std::string elems;
    for (size_t i = 0; i < comps.size(); ++i)
      elems += (i ? "," : "") + carrier->parents()[i]->elem(comps[i]);
    throw ConsistencyViolation(context + ": produced state (" + elems +
                               ") violates the consistency predicate");
  }
  return idx;
}

}  // namespace

Span identitySpan(const EffectPtr& tag, const CarrierPtr& s) {
  Span sp;
  sp.state = s;
  sp.left = lens2mlens(tag, idLens(s));
  sp.right = sp.left;
  sp.name = "idspan[" + s->name() + "]";
  return sp;
}

Span extendLeft(const MLens& ml, const Span& sp) {
  Span r;
  r.state = sp.state;
  r.left = composeM(sp.left, ml);
  r.right = sp.right;
  r.name = ml.name + "<|" + sp.name;
  r.note = sp.note;
  return r;
}

Span extendRight(const Span& sp, const MLens& ml) {
  Span r;
  r.state = sp.state;
  r.left = sp.left;
  r.right = composeM(sp.right, ml);
  r.name = sp.name + "|>" + ml.name;
  r.note = sp.note;
  return r;
}

Span join(const MLens& l1, const MLens& l2) {
  if (!l1.effect->same(*l2.effect))
    throw TagMismatch("join: effect tags differ");
  requireSameCarrier(l1.view, l2.view, "join");
  auto g1 = l1.mget;
  auto g2 = l2.mget;
  CarrierPtr st = Carrier::filteredProduct(
      "join(" + l1.source->name() + "," + l2.source->name() + ")", l1.source,
      l2.source, [g1, g2](int s1, int s2) { return g1(s1) == g2(s2); });

  Span sp;
  sp.state = st;
  sp.name = l1.name + "><" + l2.name;
  EffectPtr e = l1.effect;

  MLens left;
  left.effect = e;
  left.source = st;
  left.view = l1.source;
  left.name = sp.name + ".left";
  left.mget = [st](int s) { return st->comps(s)[0]; };
  left.mput = [st, l1, l2, e](int s, int s1n) {
    int s2 = st->comps(s)[1];
    return bind(*e, l2.mput(s2, l1.mget(s1n)), [&](int s2n) {
      return ret(*e, requireMember(st, {s1n, s2n}, "join left put"));
    });
  };
  if (l2.hasCreate())
    left.mcreate = [st, l1, l2, e](int s1n) {
      return bind(*e, l2.mcreate(l1.mget(s1n)), [&](int s2n) {
        return ret(*e, requireMember(st, {s1n, s2n}, "join left create"));
      });
    };

  MLens right;
  right.effect = e;
  right.source = st;
  right.view = l2.source;
  right.name = sp.name + ".right";
  right.mget = [st](int s) { return st->comps(s)[1]; };
  right.mput = [st, l1, l2, e](int s, int s2n) {
    int s1 = st->comps(s)[0];
    return bind(*e, l1.mput(s1, l2.mget(s2n)), [&](int s1n) {
      return ret(*e, requireMember(st, {s1n, s2n}, "join right put"));
    });
  };
  if (l1.hasCreate())
    right.mcreate = [st, l1, l2, e](int s2n) {
      return bind(*e, l1.mcreate(l2.mget(s2n)), [&](int s1n) {
        return ret(*e, requireMember(st, {s1n, s2n}, "join right create"));
      });
    };

  sp.left = std::move(left);
  sp.right = std::move(right);
  return sp;
}

PureSpan joinPure(const PureLens& l1, const PureLens& l2) {
  requireSameCarrier(l1.view, l2.view, "joinPure");
  auto g1 = l1.get;
  auto g2 = l2.get;
  CarrierPtr st = Carrier::filteredProduct(
      "join(" + l1.source->name() + "," + l2.source->name() + ")", l1.source,
      l2.source, [g1, g2](int s1, int s2) { return g1(s1) == g2(s2); });

  PureSpan sp;
  sp.state = st;

  sp.left.source = st;
  sp.left.view = l1.source;
  sp.left.name = "join.left";
  sp.left.get = [st](int s) { return st->comps(s)[0]; };
  sp.left.put = [st, l1, l2](int s, int s1n) {
    int s2n = l2.put(st->comps(s)[1], l1.get(s1n));
    return requireMember(st, {s1n, s2n}, "joinPure left put");
  };
  if (l2.full())
    sp.left.create = [st, l1, l2](int s1n) {
      int s2n = l2.create(l1.get(s1n));
      return requireMember(st, {s1n, s2n}, "joinPure left create");
    };

  sp.right.source = st;
  sp.right.view = l2.source;
  sp.right.name = "join.right";
  sp.right.get = [st](int s) { return st->comps(s)[1]; };
  sp.right.put = [st, l1, l2](int s, int s2n) {
    int s1n = l1.put(st->comps(s)[0], l2.get(s2n));
    return requireMember(st, {s1n, s2n}, "joinPure right put");
  };
  if (l1.full())
    sp.right.create = [st, l1, l2](int s2n) {
      int s1n = l1.create(l2.get(s2n));
      return requireMember(st, {s1n, s2n}, "joinPure right create");
    };
  return sp;
}

Span composeSpan(const Span& sp1, const Span& sp2) {
  Span middle = join(sp1.right, sp2.left);
  Span r = extendRight(extendLeft(sp1.left, middle), sp2.right);
  r.name = sp1.name + ";" + sp2.name;
  return r;
}

Span liftPureSpan(const EffectPtr& tag, const PureSpan& sp) {
  Span r;
  r.state = sp.state;
  r.left = lens2mlens(tag, sp.left);
  r.right = lens2mlens(tag, sp.right);
  r.name = "span";
  return r;
}

SMLens span2smlens(const Span& sp) {
  if (!sp.left.hasCreate() || !sp.right.hasCreate())
    throw std::invalid_argument("span2smlens needs legs with create");
  SMLens m;
  m.effect = sp.effect();
  m.left = sp.left.view;
  m.right = sp.right.view;
  m.complement = Carrier::maybeLift(sp.state);
  m.missing = 0;
  const int k = m.complement->size();
  EffectPtr e = m.effect;
  MLens l = sp.left;
  MLens r = sp.right;
  m.mputR = [e, l, r, k](int a, int c) {
    EffectValue step = c == 0 ? l.mcreate(a) : l.mput(c - 1, a);
    return bind(*e, step,
                [&](int s2) { return ret(*e, r.mget(s2) * k + (s2 + 1)); });
  };
  m.mputL = [e, l, r, k](int b, int c) {
    EffectValue step = c == 0 ? r.mcreate(b) : r.mput(c - 1, b);
    return bind(*e, step,
                [&](int s2) { return ret(*e, l.mget(s2) * k + (s2 + 1)); });
  };
  m.name = "smlens(" + sp.name + ")";
  return m;
}

CarrierPtr computeConsistentTriples(const SMLens& sl) {
  const Effect& e = *sl.effect;
  auto keep = [&sl, &e](int a, int b, int c) {
    return effectEq(e, sl.mputR(a, c), ret(e, sl.rightPairIdx(b, c))) &&
           effectEq(e, sl.mputL(b, c), ret(e, sl.leftPairIdx(a, c)));
  };
  return Carrier::filteredProduct3("consistent(" + sl.name + ")", sl.left,
                                   sl.right, sl.complement, keep);
}

Span smlens2span(const SMLens& sl) {
  CarrierPtr st = computeConsistentTriples(sl);
  Span sp;
  sp.state = st;
  sp.name = "span(" + sl.name + ")";
  if (st->size() == 0 && (sl.left->size() > 0 || sl.right->size() > 0))
    sp.note = "consistent-triple state space is empty while the value "
              "carriers are not";
  const int k = sl.complement->size();
  EffectPtr e = sl.effect;
  const SMLens s = sl;

  MLens left;
  left.effect = e;
  left.source = st;
  left.view = sl.left;
  left.name = sp.name + ".left";
  left.mget = [st](int t) { return st->comps(t)[0]; };
  auto pushRight = [st, s, e, k](int an, int c) {
    return bind(*e, s.mputR(an, c), [&](int bc) {
      return ret(*e,
                 requireMember(st, {an, bc / k, bc % k}, "smlens2span left"));
    });
  };
  left.mput = [st, pushRight](int t, int an) {
    return pushRight(an, st->comps(t)[2]);
  };
  left.mcreate = [s, pushRight](int an) { return pushRight(an, s.missing); };

  MLens right;
  right.effect = e;
  right.source = st;
  right.view = sl.right;
  right.name = sp.name + ".right";
  right.mget = [st](int t) { return st->comps(t)[1]; };
  auto pushLeft = [st, s, e, k](int bn, int c) {
    return bind(*e, s.mputL(bn, c), [&](int ac) {
      return ret(*e,
                 requireMember(st, {ac / k, bn, ac % k}, "smlens2span right"));
    });
  };
  right.mput = [st, pushLeft](int t, int bn) {
    return pushLeft(bn, st->comps(t)[2]);
  };
  right.mcreate = [s, pushLeft](int bn) { return pushLeft(bn, s.missing); };

  sp.left = std::move(left);
  sp.right = std::move(right);
  return sp;
}

LawReport checkSpanWB(const Span& sp) {
  LawReport report;
  auto runLeg = [&report](const MLens& leg, const std::string& legName) {
    // consistency audit: evaluate every cell, catching predicate breaks
    for (int s = 0; s < leg.source->size(); ++s)
      for (int v = 0; v < leg.view->size(); ++v) {
        try {
          leg.mput(s, v);
        } catch (const ConsistencyViolation& ex) {
          report.violations.push_back({"Consistency",
                                       {{"leg", legName},
                                        {"s", leg.source->elem(s)},
                                        {"v", leg.view->elem(v)}},
                                       "", "", ex.what()});
          return;
        }
      }
    if (leg.hasCreate())
      for (int v = 0; v < leg.view->size(); ++v) {
        try {
          leg.mcreate(v);
        } catch (const ConsistencyViolation& ex) {
          report.violations.push_back(
              {"Consistency",
               {{"leg", legName}, {"v", leg.view->elem(v)}},
               "", "", ex.what()});
          return;
        }
      }
    LawReport r = checkMLensLaws(leg);
    for (auto v : r.violations) {
      v.where.insert(v.where.begin(), {"leg", legName});
      report.violations.push_back(std::move(v));
    }
  };
  runLeg(sp.left, "left");
  runLeg(sp.right, "right");
  return report;
}

}  // namespace bxlens
