#include "bxlens/mlens.hpp"

#include <stdexcept>

namespace bxlens {

namespace {

void requireSameEffect(const EffectPtr& a, const EffectPtr& b,
                       const std::string& context) {
  if (!a || !b || !a->same(*b))
    throw TagMismatch(context + ": effect tags differ (" +
                      (a ? a->describe() : "none") + " vs " +
                      (b ? b->describe() : "none") + ")");
}

CarrierPtr intRange(int lo, int hi) {
  std::vector<std::string> elems;
  for (int i = lo; i <= hi; ++i) elems.push_back(std::to_string(i));
  return Carrier::make("ints[" + std::to_string(lo) + ".." +
                           std::to_string(hi) + "]",
                       std::move(elems));
}

}  // namespace

MLens lens2mlens(const EffectPtr& tag, const PureLens& l) {
  MLens m;
  m.effect = tag;
  m.source = l.source;
  m.view = l.view;
  m.mget = l.get;
  EffectPtr e = tag;
  auto put = l.put;
  m.mput = [e, put](int a, int b) { return ret(*e, put(a, b)); };
  if (l.full()) {
    auto create = l.create;
    m.mcreate = [e, create](int b) { return ret(*e, create(b)); };
  }
  m.name = l.name;
  return m;
}

MLens composeM(const MLens& l1, const MLens& l2) {
  requireSameEffect(l1.effect, l2.effect, "composeM");
  requireSameCarrier(l1.view, l2.source, "composeM");
  MLens m;
  m.effect = l1.effect;
  m.source = l1.source;
  m.view = l2.view;
  m.mget = [l1, l2](int a) { return l2.mget(l1.mget(a)); };
  m.mput = [l1, l2](int a, int c) {
    return bind(*l1.effect, l2.mput(l1.mget(a), c),
                [&](int b) { return l1.mput(a, b); });
  };
  if (l1.hasCreate() && l2.hasCreate())
    m.mcreate = [l1, l2](int c) {
      return bind(*l1.effect, l2.mcreate(c),
                  [&](int b) { return l1.mcreate(b); });
    };
  m.name = l1.name + ";" + l2.name;
  return m;
}

MLens constMLens(const CarrierPtr& source, const CarrierPtr& view, int b,
                 int dflt) {
  if (b < 0 || b >= view->size())
    throw std::invalid_argument("constMLens: constant outside the view");
  if (dflt < 0 || dflt >= source->size())
    throw std::invalid_argument("constMLens: default outside the source");
  MLens m;
  m.effect = Effect::maybe();
  m.source = source;
  m.view = view;
  EffectPtr e = m.effect;
  m.mget = [b](int) { return b; };
  m.mput = [e, b](int a, int b2) {
    return b2 == b ? ret(*e, a) : EffectValue{};
  };
  m.mcreate = [e, b, dflt](int b2) {
    return b2 == b ? ret(*e, dflt) : EffectValue{};
  };
  m.name = "const[" + view->elem(b) + "]";
  return m;
}

MLens absLens(int n) {
  if (n < 0) throw std::invalid_argument("absLens: negative range");
  CarrierPtr ints = intRange(-n, n);
  MLens m;
  m.effect = Effect::maybe();
  m.source = ints;
  m.view = ints;
  EffectPtr e = m.effect;
  // element i represents the integer i - n
  auto toIdx = [n](int value) { return value + n; };
  auto toVal = [n](int idx) { return idx - n; };
  m.mget = [toIdx, toVal](int a) {
    int v = toVal(a);
    return toIdx(v < 0 ? -v : v);
  };
  m.mput = [e, toIdx, toVal](int a, int b) {
    int bv = toVal(b);
    if (bv < 0) return EffectValue{};
    return ret(*e, toIdx(toVal(a) < 0 ? -bv : bv));
  };
  m.mcreate = [e, toVal](int b) {
    return toVal(b) < 0 ? EffectValue{} : ret(*e, b);
  };
  m.name = "abs[" + std::to_string(n) + "]";
  return m;
}

MLens logLens(const PureLens& l) {
  MLens m;
  m.effect = Effect::writer(Monoid::freeList(l.source));
  m.source = l.source;
  m.view = l.view;
  EffectPtr e = m.effect;
  m.mget = l.get;
  auto put = l.put;
  m.mput = [e, put](int a, int b) {
    int a2 = put(a, b);
    EffectValue r = ret(*e, a2);
    if (a2 != a) r.log.w = {a};
    return r;
  };
  if (l.full()) {
    auto create = l.create;
    m.mcreate = [e, create](int b) { return ret(*e, create(b)); };
  }
  m.name = "log[" + l.name + "]";
  return m;
}

LawReport checkMLensLaws(const MLens& l) {
  LawReport report;
  const Effect& e = *l.effect;
  const Carrier& src = *l.source;
  const Carrier& view = *l.view;

  if (src.size() == 0 && view.size() > 0) {
    report.violations.push_back(
        {"MGetPut",
         {{"a", "(none)"}},
         "(no source)",
         "(no source)",
         "empty source admits no total put for a nonempty view"});
    return report;
  }

  for (int a = 0; a < src.size(); ++a) {
    EffectValue lhs = l.mput(a, l.mget(a));
    EffectValue rhs = ret(e, a);
    if (!effectEq(e, lhs, rhs)) {
      report.violations.push_back({"MGetPut",
                                   {{"a", src.elem(a)}},
                                   renderEffect(e, src, lhs),
                                   renderEffect(e, src, rhs),
                                   ""});
      break;
    }
  }

  CarrierPtr pairC = Carrier::product(l.source, l.view);
  const int nv = view.size();
  auto pairIdx = [nv](int a, int b) { return a * nv + b; };

  bool broken = false;
  for (int a = 0; a < src.size() && !broken; ++a)
    for (int b = 0; b < nv && !broken; ++b) {
      EffectValue m = l.mput(a, b);
      EffectValue lhs = bind(e, m, [&](int a2) {
        return ret(e, pairIdx(a2, l.mget(a2)));
      });
      EffectValue rhs = bind(e, m, [&](int a2) { return ret(e, pairIdx(a2, b)); });
      if (!effectEq(e, lhs, rhs)) {
        report.violations.push_back({"MPutGet",
                                     {{"a", src.elem(a)}, {"b", view.elem(b)}},
                                     renderEffect(e, *pairC, lhs),
                                     renderEffect(e, *pairC, rhs),
                                     ""});
        broken = true;
      }
    }

  if (l.hasCreate()) {
    for (int b = 0; b < nv; ++b) {
      EffectValue m = l.mcreate(b);
      EffectValue lhs = bind(e, m, [&](int a2) {
        return ret(e, pairIdx(a2, l.mget(a2)));
      });
      EffectValue rhs = bind(e, m, [&](int a2) { return ret(e, pairIdx(a2, b)); });
      if (!effectEq(e, lhs, rhs)) {
        report.violations.push_back({"MCreateGet",
                                     {{"b", view.elem(b)}},
                                     renderEffect(e, *pairC, lhs),
                                     renderEffect(e, *pairC, rhs),
                                     ""});
        break;
      }
    }
  }
  return report;
}

NaiveMLens composeNaive(const NaiveMLens& l1, const NaiveMLens& l2) {
  requireSameEffect(l1.effect, l2.effect, "composeNaive");
  requireSameCarrier(l1.view, l2.source, "composeNaive");
  NaiveMLens m;
  m.effect = l1.effect;
  m.source = l1.source;
  m.view = l2.view;
  m.mget = [l1, l2](int a) {
    return bind(*l1.effect, l1.mget(a), [&](int b) { return l2.mget(b); });
  };
  m.mput = [l1, l2](int a, int c) {
    const Effect& e = *l1.effect;
    return bind(e, l1.mget(a), [&](int b) {
      return bind(e, l2.mput(b, c), [&](int b2) { return l1.mput(a, b2); });
    });
  };
  m.name = l1.name + ";" + l2.name;
  return m;
}

LawReport checkNaiveLaws(const NaiveMLens& l) {
  LawReport report;
  const Effect& e = *l.effect;
  const Carrier& src = *l.source;
  const Carrier& view = *l.view;

  for (int a = 0; a < src.size(); ++a) {
    EffectValue lhs =
        bind(e, l.mget(a), [&](int b) { return l.mput(a, b); });
    EffectValue rhs = ret(e, a);
    if (!effectEq(e, lhs, rhs)) {
      report.violations.push_back({"MGetPut0",
                                   {{"a", src.elem(a)}},
                                   renderEffect(e, src, lhs),
                                   renderEffect(e, src, rhs),
                                   ""});
      break;
    }
  }

  CarrierPtr pairC = Carrier::product(l.source, l.view);
  const int nv = view.size();
  auto pairIdx = [nv](int a, int b) { return a * nv + b; };

  bool broken = false;
  for (int a = 0; a < src.size() && !broken; ++a)
    for (int b = 0; b < nv && !broken; ++b) {
      EffectValue m = l.mput(a, b);
      EffectValue lhs = bind(e, m, [&](int a2) {
        return bind(e, l.mget(a2),
                    [&](int b2) { return ret(e, pairIdx(a2, b2)); });
      });
      EffectValue rhs = bind(e, m, [&](int a2) { return ret(e, pairIdx(a2, b)); });
      if (!effectEq(e, lhs, rhs)) {
        report.violations.push_back({"MPutGet0",
                                     {{"a", src.elem(a)}, {"b", view.elem(b)}},
                                     renderEffect(e, *pairC, lhs),
                                     renderEffect(e, *pairC, rhs),
                                     ""});
        broken = true;
      }
    }
  return report;
}

NaiveMLens asNaive(const MLens& l) {
  NaiveMLens m;
  m.effect = l.effect;
  m.source = l.source;
  m.view = l.view;
  EffectPtr e = l.effect;
  auto get = l.mget;
  m.mget = [e, get](int a) { return ret(*e, get(a)); };
  m.mput = l.mput;
  m.name = l.name;
  return m;
}

PureLens toPure(const MLens& l) {
  if (l.effect->kind() != EffectKind::Identity)
    throw NonPureInput("toPure needs the identity effect, got " +
                       l.effect->describe());
  PureLens p;
  p.source = l.source;
  p.view = l.view;
  p.get = l.mget;
  auto put = l.mput;
  p.put = [put](int a, int b) { return put(a, b).v; };
  if (l.hasCreate()) {
    auto create = l.mcreate;
    p.create = [create](int b) { return create(b).v; };
  }
  p.name = l.name;
  return p;
}

PutLens asPutLens(const MLens& l) {
  PutLens p;
  p.effect = l.effect;
  p.source = l.source;
  p.view = l.view;
  p.mget = l.mget;
  p.mput = l.mput;
  p.name = l.name;
  return p;
}

// ------------------------------------------------------ counterexample search

namespace {

struct NaiveTables {
  std::vector<int> mget;  // source index -> index into view effect values
  std::vector<int> mput;  // source*|view|+view -> index into source effect values
};

NaiveMLens tablesToNaive(const EffectPtr& e, const CarrierPtr& src,
                         const CarrierPtr& view,
                         const std::vector<EffectValue>& evView,
                         const std::vector<EffectValue>& evSrc,
                         const NaiveTables& t, const std::string& name) {
  NaiveMLens l;
  l.effect = e;
  l.source = src;
  l.view = view;
  const int nv = view->size();
  l.mget = [evView, g = t.mget](int a) { return evView[g.at(a)]; };
  l.mput = [evSrc, p = t.mput, nv](int a, int b) {
    return evSrc[p.at(a * nv + b)];
  };
  l.name = name;
  return l;
}

std::string renderNaiveTables(const EffectPtr& e, const CarrierPtr& src,
                              const CarrierPtr& view,
                              const std::vector<EffectValue>& evView,
                              const std::vector<EffectValue>& evSrc,
                              const NaiveTables& t) {
  std::string s = "mget {";
  for (int a = 0; a < src->size(); ++a) {
    if (a) s += "; ";
    s += src->elem(a) + " -> " + renderEffect(*e, *view, evView[t.mget[a]]);
  }
  s += "} mput {";
  const int nv = view->size();
  for (int a = 0; a < src->size(); ++a)
    for (int b = 0; b < nv; ++b) {
      if (a + b) s += "; ";
      s += "(" + src->elem(a) + "," + view->elem(b) + ") -> " +
           renderEffect(*e, *src, evSrc[t.mput[a * nv + b]]);
    }
  return s + "}";
}

bool naivePasses(const Effect& e, int na, int nb,
                 const std::vector<EffectValue>& evView,
                 const std::vector<EffectValue>& evSrc,
                 const std::vector<EffectValue>& retSrc,
                 const NaiveTables& t) {
  // MGetPut0
  for (int a = 0; a < na; ++a) {
    EffectValue lhs = bind(e, evView[t.mget[a]],
                           [&](int b) { return evSrc[t.mput[a * nb + b]]; });
    if (!effectEq(e, lhs, retSrc[a])) return false;
  }
  // MPutGet0, paired continuation
  for (int a = 0; a < na; ++a)
    for (int b = 0; b < nb; ++b) {
      const EffectValue& m = evSrc[t.mput[a * nb + b]];
      EffectValue lhs = bind(e, m, [&](int a2) {
        return bind(e, evView[t.mget[a2]],
                    [&](int b2) { return ret(e, a2 * nb + b2); });
      });
      EffectValue rhs = bind(e, m, [&](int a2) { return ret(e, a2 * nb + b); });
      if (!effectEq(e, lhs, rhs)) return false;
    }
  return true;
}

// Odometer over (mget table, mput table), mget most significant; within each
// table the first cell is most significant.
class NaiveSpace {
 public:
  NaiveSpace(int na, int nb, int nEvView, int nEvSrc)
      : nEvView_(nEvView), nEvSrc_(nEvSrc) {
    t_.mget.assign(na, 0);
    t_.mput.assign(static_cast<size_t>(na) * nb, 0);
    done_ = (na > 0 && nEvView == 0) || (!t_.mput.empty() && nEvSrc == 0);
  }
  bool done() const { return done_; }
  const NaiveTables& tables() const { return t_; }
  void next() {
    if (advance(t_.mput, nEvSrc_)) return;
    if (advance(t_.mget, nEvView_)) return;
    done_ = true;
  }

 private:
  bool advance(std::vector<int>& v, int radix) {
    for (int i = static_cast<int>(v.size()) - 1; i >= 0; --i) {
      if (v[i] + 1 < radix) {
        ++v[i];
        return true;
      }
      v[i] = 0;
    }
    return false;
  }
  NaiveTables t_;
  int nEvView_, nEvSrc_;
  bool done_ = false;
};

long long mulCapped(long long a, long long b, long long cap) {
  if (a == 0 || b == 0) return 0;
  if (a > cap / b) return cap + 1;
  return a * b;
}

// |M n|, the number of effect values over a carrier of n elements, without
// materializing them. Mirrors enumerateEffectValues (list cap 2).
long long effectValueCount(const Effect& e, int n, long long cap) {
  switch (e.kind()) {
    case EffectKind::Identity:
      return n;
    case EffectKind::Maybe:
      return n + 1;
    case EffectKind::List:
      return 1 + n + static_cast<long long>(n) * n;
    case EffectKind::Writer: {
      long long logs =
          e.monoid().kind() == Monoid::Kind::FreeList
              ? 1 + e.monoid().carrier()->size() +
                    static_cast<long long>(e.monoid().carrier()->size()) *
                        e.monoid().carrier()->size()
              : e.monoid().carrier()->size();
      return mulCapped(logs, n, cap);
    }
    case EffectKind::State: {
      const int s = e.stateDom()->size();
      long long c = 1;
      for (int i = 0; i < s; ++i)
        c = mulCapped(c, static_cast<long long>(n) * s, cap);
      return c;
    }
  }
  return 0;
}

long long candidateCount(int na, int nb, long long nEvView, long long nEvSrc,
                         long long cap) {
  long long c = 1;
  for (int i = 0; i < na; ++i) c = mulCapped(c, nEvView, cap);
  for (int i = 0; i < na * nb; ++i) c = mulCapped(c, nEvSrc, cap);
  return c;
}

CarrierPtr letterCarrier(const std::string& prefix, int n) {
  std::vector<std::string> elems;
  for (int i = 0; i < n; ++i) elems.push_back(prefix + std::to_string(i));
  return Carrier::make(prefix, std::move(elems));
}

}  // namespace

NaiveSearchResult searchNaiveCounterexample(const EffectPtr& effect, int maxA,
                                            int maxB, long long budget) {
  // Pre-compute the total raw table count across every shape.
  long long total = 0;
  auto addCapped = [&](long long x) {
    total = x > budget - total ? budget + 1 : total + x;
    if (total > budget)
      throw BoundExceeded("naive search needs more than " +
                          std::to_string(budget) + " candidate tables");
  };
  for (int na = 1; na <= maxA; ++na)
    for (int nb = 1; nb <= maxB; ++nb)
      for (int nc = 1; nc <= maxB; ++nc) {
        auto evCount = [&](int n) {
          return effectValueCount(*effect, n, budget);
        };
        addCapped(candidateCount(na, nb, evCount(nb), evCount(na), budget));
        addCapped(candidateCount(nb, nc, evCount(nc), evCount(nb), budget));
      }

  NaiveSearchResult result;
  for (int na = 1; na <= maxA; ++na)
    for (int nb = 1; nb <= maxB; ++nb)
      for (int nc = 1; nc <= maxB; ++nc) {
        CarrierPtr A = letterCarrier("a", na);
        CarrierPtr B = letterCarrier("b", nb);
        CarrierPtr C = letterCarrier("c", nc);
        const Effect& e = *effect;
        auto evA = enumerateEffectValues(e, *A);
        auto evB = enumerateEffectValues(e, *B);
        auto evC = enumerateEffectValues(e, *C);
        std::vector<EffectValue> retA, retB;
        for (int a = 0; a < na; ++a) retA.push_back(ret(e, a));
        for (int b = 0; b < nb; ++b) retB.push_back(ret(e, b));

        std::vector<NaiveTables> wbLeft, wbRight;
        for (NaiveSpace sp(na, nb, static_cast<int>(evB.size()),
                           static_cast<int>(evA.size()));
             !sp.done(); sp.next()) {
          ++result.candidatesTried;
          if (naivePasses(e, na, nb, evB, evA, retA, sp.tables()))
            wbLeft.push_back(sp.tables());
        }
        for (NaiveSpace sp(nb, nc, static_cast<int>(evC.size()),
                           static_cast<int>(evB.size()));
             !sp.done(); sp.next()) {
          ++result.candidatesTried;
          if (naivePasses(e, nb, nc, evC, evB, retB, sp.tables()))
            wbRight.push_back(sp.tables());
        }
        result.lawfulLeft = static_cast<long long>(wbLeft.size());
        result.lawfulRight = static_cast<long long>(wbRight.size());

        for (const auto& t1 : wbLeft)
          for (const auto& t2 : wbRight) {
            ++result.pairsTried;
            NaiveMLens l1 = tablesToNaive(effect, A, B, evB, evA, t1, "left");
            NaiveMLens l2 = tablesToNaive(effect, B, C, evC, evB, t2, "right");
            LawReport r = checkNaiveLaws(composeNaive(l1, l2));
            if (!r.pass()) {
              result.found = true;
              result.sizeA = na;
              result.sizeB = nb;
              result.sizeC = nc;
              result.left = l1;
              result.right = l2;
              result.leftText = renderNaiveTables(effect, A, B, evB, evA, t1);
              result.rightText = renderNaiveTables(effect, B, C, evC, evB, t2);
              result.violation = r.violations.front();
              return result;
            }
          }
      }
  return result;
}

LawReport checkPutLensLaws(const PutLens& l) {
  const Effect& e = *l.effect;
  if (e.kind() != EffectKind::Maybe && e.kind() != EffectKind::List)
    throw UnsupportedMembership("put-lens laws need a membership effect, not " +
                                e.describe());
  LawReport report;
  const Carrier& src = *l.source;
  const Carrier& view = *l.view;

  for (int s = 0; s < src.size(); ++s) {
    EffectValue lhs = l.mput(s, l.mget(s));
    EffectValue rhs = ret(e, s);
    if (!effectEq(e, lhs, rhs)) {
      report.violations.push_back({"MGetPut1",
                                   {{"s", src.elem(s)}},
                                   renderEffect(e, src, lhs),
                                   renderEffect(e, src, rhs),
                                   ""});
      break;
    }
  }

  bool broken = false;
  for (int s = 0; s < src.size() && !broken; ++s)
    for (int v = 0; v < view.size() && !broken; ++v) {
      EffectValue m = l.mput(s, v);
      for (int s2 = 0; s2 < src.size() && !broken; ++s2) {
        if (!member(e, s2, m)) continue;
        int got = l.mget(s2);
        if (got != v) {
          report.violations.push_back({"MPutGet1",
                                       {{"s", src.elem(s)},
                                        {"v", view.elem(v)},
                                        {"s'", src.elem(s2)}},
                                       view.elem(got),
                                       view.elem(v),
                                       ""});
          broken = true;
        }
      }
    }
  return report;
}

}  // namespace bxlens
