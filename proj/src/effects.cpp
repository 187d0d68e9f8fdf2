#include "bxlens/effects.hpp"

#include <cmath>
#include <stdexcept>

namespace bxlens {

// ---------------------------------------------------------------- Monoid

Monoid Monoid::freeList(CarrierPtr base) {
  Monoid m;
  m.kind_ = Kind::FreeList;
  m.carrier_ = std::move(base);
  return m;
}

Monoid Monoid::table(CarrierPtr carrier, std::vector<std::vector<int>> op,
                     int unit) {
  Monoid m;
  m.kind_ = Kind::Table;
  m.carrier_ = std::move(carrier);
  m.op_ = std::move(op);
  m.unit_ = unit;
  const int n = m.carrier_->size();
  if (static_cast<int>(m.op_.size()) != n)
    throw std::invalid_argument("monoid table has wrong row count");
  for (const auto& row : m.op_)
    if (static_cast<int>(row.size()) != n)
      throw std::invalid_argument("monoid table has wrong column count");
  for (int i = 0; i < n; ++i)
    if (m.op_[m.unit_][i] != i || m.op_[i][m.unit_] != i)
      throw std::invalid_argument("monoid unit law fails at " +
                                  m.carrier_->elem(i));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (m.op_[m.op_[a][b]][c] != m.op_[a][m.op_[b][c]])
          throw std::invalid_argument("monoid associativity fails");
  return m;
}

MonoidVal Monoid::unit() const {
  if (kind_ == Kind::FreeList) return {};
  return {{unit_}};
}

MonoidVal Monoid::op(const MonoidVal& a, const MonoidVal& b) const {
  if (kind_ == Kind::FreeList) {
    MonoidVal r = a;
    r.w.insert(r.w.end(), b.w.begin(), b.w.end());
    return r;
  }
  return {{op_[a.w.at(0)][b.w.at(0)]}};
}

bool Monoid::commutative() const {
  if (kind_ == Kind::FreeList) return carrier_->size() <= 1;
  const int n = carrier_->size();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (op_[a][b] != op_[b][a]) return false;
  return true;
}

std::vector<MonoidVal> Monoid::enumerate(int cap) const {
  std::vector<MonoidVal> out;
  if (kind_ == Kind::Table) {
    for (int i = 0; i < carrier_->size(); ++i) out.push_back({{i}});
    return out;
  }
  const int n = carrier_->size();
  std::vector<std::vector<int>> cur = {{}};
  out.push_back({});
  for (int len = 1; len <= cap; ++len) {
    std::vector<std::vector<int>> next;
    for (const auto& w : cur)
      for (int i = 0; i < n; ++i) {
        auto x = w;
        x.push_back(i);
        out.push_back({x});
        next.push_back(std::move(x));
      }
    cur = std::move(next);
  }
  return out;
}

std::string Monoid::render(const MonoidVal& v) const {
  if (kind_ == Kind::Table) return carrier_->elem(v.w.at(0));
  std::string s = "[";
  for (size_t i = 0; i < v.w.size(); ++i) {
    if (i) s += " ";
    s += carrier_->elem(v.w[i]);
  }
  return s + "]";
}

bool Monoid::same(const Monoid& o) const {
  if (kind_ != o.kind_) return false;
  if (!carrierEq(carrier_, o.carrier_)) return false;
  return kind_ == Kind::FreeList || (op_ == o.op_ && unit_ == o.unit_);
}

// ---------------------------------------------------------------- Effect

EffectPtr Effect::identity() {
  auto e = std::shared_ptr<Effect>(new Effect());
  e->kind_ = EffectKind::Identity;
  return e;
}

EffectPtr Effect::maybe() {
  auto e = std::shared_ptr<Effect>(new Effect());
  e->kind_ = EffectKind::Maybe;
  return e;
}

EffectPtr Effect::list() {
  auto e = std::shared_ptr<Effect>(new Effect());
  e->kind_ = EffectKind::List;
  return e;
}

EffectPtr Effect::state(CarrierPtr dom) {
  auto e = std::shared_ptr<Effect>(new Effect());
  e->kind_ = EffectKind::State;
  e->stateDom_ = std::move(dom);
  return e;
}

EffectPtr Effect::writer(Monoid m) {
  auto e = std::shared_ptr<Effect>(new Effect());
  e->kind_ = EffectKind::Writer;
  e->monoid_ = std::move(m);
  return e;
}

bool Effect::same(const Effect& o) const {
  if (kind_ != o.kind_) return false;
  switch (kind_) {
    case EffectKind::State:
      return carrierEq(stateDom_, o.stateDom_);
    case EffectKind::Writer:
      return monoid_.same(o.monoid_);
    default:
      return true;
  }
}

std::string Effect::describe() const {
  switch (kind_) {
    case EffectKind::Identity: return "identity";
    case EffectKind::Maybe: return "maybe";
    case EffectKind::List: return "list";
    case EffectKind::State: return "state " + stateDom_->name();
    case EffectKind::Writer:
      return std::string("writer ") +
             (monoid_.kind() == Monoid::Kind::FreeList ? "list " : "") +
             monoid_.carrier()->name();
  }
  return "?";
}

// ------------------------------------------------------------- operations

EffectValue ret(const Effect& e, int a) {
  EffectValue m;
  switch (e.kind()) {
    case EffectKind::Identity:
      m.v = a;
      break;
    case EffectKind::Maybe:
      m.has = true;
      m.v = a;
      break;
    case EffectKind::List:
      m.items = {a};
      break;
    case EffectKind::Writer:
      m.log = e.monoid().unit();
      m.v = a;
      break;
    case EffectKind::State:
      for (int s = 0; s < e.stateDom()->size(); ++s) m.table.push_back({a, s});
      break;
  }
  return m;
}

EffectValue bind(const Effect& e, const EffectValue& m,
                 const std::function<EffectValue(int)>& f) {
  EffectValue r;
  switch (e.kind()) {
    case EffectKind::Identity:
      return f(m.v);
    case EffectKind::Maybe:
      if (!m.has) return r;  // nothing propagates
      return f(m.v);
    case EffectKind::List:
      for (int x : m.items) {
        EffectValue sub = f(x);
        r.items.insert(r.items.end(), sub.items.begin(), sub.items.end());
      }
      return r;
    case EffectKind::Writer: {
      EffectValue sub = f(m.v);
      r.log = e.monoid().op(m.log, sub.log);
      r.v = sub.v;
      return r;
    }
    case EffectKind::State: {
      r.table.resize(m.table.size());
      for (size_t s = 0; s < m.table.size(); ++s) {
        auto [v1, s1] = m.table[s];
        r.table[s] = f(v1).table.at(s1);
      }
      return r;
    }
  }
  return r;
}

bool effectEq(const Effect& e, const EffectValue& a, const EffectValue& b) {
  switch (e.kind()) {
    case EffectKind::Identity: return a.v == b.v;
    case EffectKind::Maybe:    return a.has == b.has && (!a.has || a.v == b.v);
    case EffectKind::List:     return a.items == b.items;
    case EffectKind::Writer:   return a.log == b.log && a.v == b.v;
    case EffectKind::State:    return a.table == b.table;
  }
  return false;
}

bool member(const Effect& e, int x, const EffectValue& m) {
  switch (e.kind()) {
    case EffectKind::Maybe:
      return m.has && m.v == x;
    case EffectKind::List:
      for (int i : m.items)
        if (i == x) return true;
      return false;
    default:
      throw UnsupportedMembership("member is defined for maybe and list only, not " +
                                  e.describe());
  }
}

EffectValue mapEffect(const Effect& e, const EffectValue& m,
                      const std::function<int(int)>& f) {
  EffectValue r = m;
  switch (e.kind()) {
    case EffectKind::Identity:
      r.v = f(m.v);
      break;
    case EffectKind::Maybe:
      if (m.has) r.v = f(m.v);
      break;
    case EffectKind::List:
      for (auto& x : r.items) x = f(x);
      break;
    case EffectKind::Writer:
      r.v = f(m.v);
      break;
    case EffectKind::State:
      for (auto& [v, s] : r.table) v = f(v);
      break;
  }
  return r;
}

std::optional<EffectValue> zipEffect(const Effect& e, const EffectValue& ma,
                                     const EffectValue& mb,
                                     const std::function<int(int, int)>& pairIdx) {
  EffectValue r;
  switch (e.kind()) {
    case EffectKind::Identity:
      r.v = pairIdx(ma.v, mb.v);
      return r;
    case EffectKind::Maybe:
      if (ma.has != mb.has) return std::nullopt;
      r.has = ma.has;
      if (r.has) r.v = pairIdx(ma.v, mb.v);
      return r;
    case EffectKind::List:
      if (ma.items.size() != mb.items.size()) return std::nullopt;
      for (size_t i = 0; i < ma.items.size(); ++i)
        r.items.push_back(pairIdx(ma.items[i], mb.items[i]));
      return r;
    case EffectKind::Writer:
      if (!(ma.log == mb.log)) return std::nullopt;
      r.log = ma.log;
      r.v = pairIdx(ma.v, mb.v);
      return r;
    case EffectKind::State:
      r.table.resize(ma.table.size());
      for (size_t s = 0; s < ma.table.size(); ++s) {
        if (ma.table[s].second != mb.table[s].second) return std::nullopt;
        r.table[s] = {pairIdx(ma.table[s].first, mb.table[s].first),
                      ma.table[s].second};
      }
      return r;
  }
  return std::nullopt;
}

std::string renderEffect(const Effect& e, const Carrier& value,
                         const EffectValue& m) {
  switch (e.kind()) {
    case EffectKind::Identity:
      return value.elem(m.v);
    case EffectKind::Maybe:
      return m.has ? "just " + value.elem(m.v) : "nothing";
    case EffectKind::List: {
      std::string s = "[";
      for (size_t i = 0; i < m.items.size(); ++i) {
        if (i) s += " ";
        s += value.elem(m.items[i]);
      }
      return s + "]";
    }
    case EffectKind::Writer:
      return "(" + e.monoid().render(m.log) + "; " + value.elem(m.v) + ")";
    case EffectKind::State: {
      const Carrier& dom = *e.stateDom();
      std::string s = "{";
      for (size_t i = 0; i < m.table.size(); ++i) {
        if (i) s += "; ";
        s += dom.elem(static_cast<int>(i)) + " -> (" +
             value.elem(m.table[i].first) + "," + dom.elem(m.table[i].second) +
             ")";
      }
      return s + "}";
    }
  }
  return "?";
}

std::vector<EffectValue> enumerateEffectValues(const Effect& e,
                                               const Carrier& value,
                                               int listCap) {
  std::vector<EffectValue> out;
  const int n = value.size();
  switch (e.kind()) {
    case EffectKind::Identity:
      for (int v = 0; v < n; ++v) out.push_back(ret(e, v));
      break;
    case EffectKind::Maybe: {
      out.emplace_back();  // nothing
      for (int v = 0; v < n; ++v) out.push_back(ret(e, v));
      break;
    }
    case EffectKind::List: {
      std::vector<std::vector<int>> cur = {{}};
      EffectValue nil;
      out.push_back(nil);
      for (int len = 1; len <= listCap; ++len) {
        std::vector<std::vector<int>> next;
        for (const auto& w : cur)
          for (int v = 0; v < n; ++v) {
            auto x = w;
            x.push_back(v);
            EffectValue m;
            m.items = x;
            out.push_back(m);
            next.push_back(std::move(x));
          }
        cur = std::move(next);
      }
      break;
    }
    case EffectKind::Writer: {
      for (const auto& log : e.monoid().enumerate(listCap))
        for (int v = 0; v < n; ++v) {
          EffectValue m;
          m.log = log;
          m.v = v;
          out.push_back(m);
        }
      break;
    }
    case EffectKind::State: {
      const int ns = e.stateDom()->size();
      if (ns == 0) {
        out.emplace_back();  // the empty table
        break;
      }
      // entry order: value-major, next-state minor; table slots in state order
      const int entries = n * ns;
      std::vector<int> odo(ns, 0);
      while (true) {
        EffectValue m;
        for (int s = 0; s < ns; ++s)
          m.table.push_back({odo[s] / ns, odo[s] % ns});
        out.push_back(std::move(m));
        int i = ns - 1;
        while (i >= 0 && odo[i] == entries - 1) odo[i--] = 0;
        if (i < 0) break;
        ++odo[i];
      }
      break;
    }
  }
  return out;
}

// ------------------------------------------------------------ law checking

namespace {

constexpr long long kAssocWorkCap = 300'000'000;

long long powCapped(long long base, int exp, long long cap) {
  long long r = 1;
  for (int i = 0; i < exp; ++i) {
    if (base != 0 && r > cap / base) return cap + 1;
    r *= base;
  }
  return r;
}

std::string renderFunction(const Effect& e, const Carrier& carrier,
                           const std::vector<EffectValue>& evs,
                           const std::vector<int>& table) {
  std::string s = "{";
  for (int a = 0; a < carrier.size(); ++a) {
    if (a) s += "; ";
    s += carrier.elem(a) + " -> " + renderEffect(e, carrier, evs[table[a]]);
  }
  return s + "}";
}

// All tables carrier -> index-into-evs, lexicographic.
class FunctionSpace {
 public:
  FunctionSpace(int domain, int codomain)
      : dom_(domain),
        cod_(codomain),
        table_(domain, 0),
        done_(domain > 0 && codomain == 0) {}
  const std::vector<int>& table() const { return table_; }
  bool done() const { return done_; }
  void next() {
    int i = dom_ - 1;
    while (i >= 0 && table_[i] == cod_ - 1) table_[i--] = 0;
    if (i < 0) {
      done_ = true;
      return;
    }
    ++table_[i];
  }

 private:
  int dom_, cod_;
  std::vector<int> table_;
  bool done_;
};

}  // namespace

LawReport checkMonadLaws(const Effect& e, const CarrierPtr& carrier,
                         const MonadOps* ops, long long budget) {
  LawReport report;
  const auto evs = enumerateEffectValues(e, *carrier);
  const int nv = static_cast<int>(evs.size());
  const int nc = carrier->size();
  const long long fspace = powCapped(nv, nc, budget);
  if (fspace > budget)
    throw BoundExceeded("function space " + std::to_string(nv) + "^" +
                        std::to_string(nc) + " exceeds budget " +
                        std::to_string(budget));
  if (nv > 0 && fspace > 0) {
    const long long assocWork = powCapped(fspace, 2, kAssocWorkCap / nv);
    if (assocWork > kAssocWorkCap / nv)
      throw BoundExceeded("associativity sweep needs about " +
                          std::to_string(nv) + "*" + std::to_string(fspace) +
                          "^2 evaluations; raise the budget scheme or shrink the carrier");
  }

  auto doRet = [&](int a) { return ops && ops->ret ? ops->ret(a) : ret(e, a); };
  auto doBind = [&](const EffectValue& m, const std::function<EffectValue(int)>& f) {
    return ops && ops->bind ? ops->bind(m, f) : bind(e, m, f);
  };
  auto fnOf = [&](const std::vector<int>& table) {
    return [&evs, table](int a) { return evs[table.at(a)]; };
  };

  // left unit: ret a >>= f  =  f a
  bool broken = false;
  for (FunctionSpace fs(nc, nv); !fs.done() && !broken; fs.next()) {
    auto f = fnOf(fs.table());
    for (int a = 0; a < nc && !broken; ++a) {
      EffectValue lhs = doBind(doRet(a), f);
      const EffectValue& rhs = evs[fs.table()[a]];
      if (!effectEq(e, lhs, rhs)) {
        report.violations.push_back(
            {"LeftUnit",
             {{"a", carrier->elem(a)},
              {"f", renderFunction(e, *carrier, evs, fs.table())}},
             renderEffect(e, *carrier, lhs),
             renderEffect(e, *carrier, rhs),
             ""});
        broken = true;
      }
    }
  }

  // right unit: m >>= ret  =  m
  for (const auto& m : evs) {
    EffectValue lhs = doBind(m, [&](int a) { return doRet(a); });
    if (!effectEq(e, lhs, m)) {
      report.violations.push_back({"RightUnit",
                                   {{"m", renderEffect(e, *carrier, m)}},
                                   renderEffect(e, *carrier, lhs),
                                   renderEffect(e, *carrier, m),
                                   ""});
      break;
    }
  }

  // associativity: (m >>= f) >>= g  =  m >>= (\x -> f x >>= g)
  broken = false;
  for (FunctionSpace ff(nc, nv); !ff.done() && !broken; ff.next()) {
    auto f = fnOf(ff.table());
    for (FunctionSpace fg(nc, nv); !fg.done() && !broken; fg.next()) {
      auto g = fnOf(fg.table());
      std::vector<EffectValue> fg_comp(nc);
      for (int x = 0; x < nc; ++x) fg_comp[x] = doBind(evs[ff.table()[x]], g);
      for (const auto& m : evs) {
        EffectValue lhs = doBind(doBind(m, f), g);
        EffectValue rhs = doBind(m, [&](int x) { return fg_comp.at(x); });
        if (!effectEq(e, lhs, rhs)) {
          report.violations.push_back(
              {"Assoc",
               {{"m", renderEffect(e, *carrier, m)},
                {"f", renderFunction(e, *carrier, evs, ff.table())},
                {"g", renderFunction(e, *carrier, evs, fg.table())}},
               renderEffect(e, *carrier, lhs),
               renderEffect(e, *carrier, rhs),
               ""});
          broken = true;
          break;
        }
      }
    }
  }
  return report;
}

CommutativityResult checkCommutative(const Effect& e, const CarrierPtr& carrier,
                                     long long budget) {
  CommutativityResult result;
  const auto evs = enumerateEffectValues(e, *carrier);
  const long long pairs =
      powCapped(static_cast<long long>(evs.size()), 2, budget);
  if (pairs > budget)
    throw BoundExceeded("effect pair space exceeds budget " +
                        std::to_string(budget));
  const int n = carrier->size();
  auto pairIdx = [n](int a, int b) { return a * n + b; };
  for (const auto& x : evs) {
    for (const auto& y : evs) {
      EffectValue lhs = bind(e, x, [&](int a) {
        return bind(e, y, [&](int b) { return ret(e, pairIdx(a, b)); });
      });
      EffectValue rhs = bind(e, y, [&](int b) {
        return bind(e, x, [&](int a) { return ret(e, pairIdx(a, b)); });
      });
      if (!effectEq(e, lhs, rhs)) {
        result.commutative = false;
        result.x = x;
        result.y = y;
        result.xText = renderEffect(e, *carrier, x);
        result.yText = renderEffect(e, *carrier, y);
        return result;
      }
    }
  }
  return result;
}

LawReport checkMembershipLaws(const Effect& e, const CarrierPtr& carrier,
                              const MemberFn* memberFn, long long budget) {
  LawReport report;
  auto isMember = [&](int x, const EffectValue& m) {
    return memberFn && *memberFn ? (*memberFn)(x, m) : member(e, x, m);
  };
  const auto evs = enumerateEffectValues(e, *carrier);
  const int nv = static_cast<int>(evs.size());
  const int nc = carrier->size();
  const long long fspace = powCapped(nv, nc, budget);
  if (fspace > budget)
    throw BoundExceeded("function space exceeds budget " +
                        std::to_string(budget));

  // x in ret y  iff  x = y
  bool retBroken = false;
  for (int x = 0; x < nc && !retBroken; ++x)
    for (int y = 0; y < nc && !retBroken; ++y) {
      bool lhs = isMember(x, ret(e, y));
      bool rhs = x == y;
      if (lhs != rhs) {
        report.violations.push_back({"MemberReturn",
                                     {{"x", carrier->elem(x)},
                                      {"y", carrier->elem(y)}},
                                     lhs ? "true" : "false",
                                     rhs ? "true" : "false",
                                     ""});
        retBroken = true;
      }
    }

  // y in (m >>= f)  iff  exists x: x in m and y in f x
  for (const auto& m : evs) {
    for (FunctionSpace fs(nc, nv); !fs.done(); fs.next()) {
      auto f = [&](int a) { return evs[fs.table().at(a)]; };
      EffectValue bound = bind(e, m, f);
      for (int y = 0; y < nc; ++y) {
        bool lhs = isMember(y, bound);
        bool rhs = false;
        for (int x = 0; x < nc && !rhs; ++x)
          rhs = isMember(x, m) && isMember(y, f(x));
        if (lhs != rhs) {
          report.violations.push_back(
              {"MemberBind",
               {{"y", carrier->elem(y)},
                {"m", renderEffect(e, *carrier, m)},
                {"f", renderFunction(e, *carrier, evs, fs.table())}},
               lhs ? "true" : "false",
               rhs ? "true" : "false",
               ""});
          return report;
        }
      }
    }
  }
  return report;
}

}  // namespace bxlens
