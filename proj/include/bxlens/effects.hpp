#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bxlens/carrier.hpp"
#include "bxlens/errors.hpp"
#include "bxlens/report.hpp"

namespace bxlens {

/// A monoid element. Free-list monoids store the word; table monoids store a
/// single carrier index (the unit included).
struct MonoidVal {
  std::vector<int> w;
  bool operator==(const MonoidVal&) const = default;
};

/// Writer log algebra: either the free list monoid over a base carrier or an
/// explicit finite table (validated at construction).
class Monoid {
 public:
  enum class Kind { FreeList, Table };

  static Monoid freeList(CarrierPtr base);
  static Monoid table(CarrierPtr carrier, std::vector<std::vector<int>> op,
                      int unit);

  Kind kind() const { return kind_; }
  const CarrierPtr& carrier() const { return carrier_; }

  MonoidVal unit() const;
  MonoidVal op(const MonoidVal& a, const MonoidVal& b) const;
  bool commutative() const;
  /// All elements; for the free list monoid, words of length <= cap in
  /// length-then-lex order.
  std::vector<MonoidVal> enumerate(int cap) const;
  std::string render(const MonoidVal& v) const;
  bool same(const Monoid& o) const;

 private:
  Monoid() = default;
  Kind kind_ = Kind::FreeList;
  CarrierPtr carrier_;
  std::vector<std::vector<int>> op_;
  int unit_ = 0;
};

enum class EffectKind { Identity, Maybe, Writer, State, List };

class Effect;
using EffectPtr = std::shared_ptr<const Effect>;

/// A finitely checkable monad instance. Identity, Maybe and List need no
/// parameters; State carries its (finite) state domain and Writer its log
/// monoid.
class Effect {
 public:
  static EffectPtr identity();
  static EffectPtr maybe();
  static EffectPtr list();
  static EffectPtr state(CarrierPtr dom);
  static EffectPtr writer(Monoid m);

  EffectKind kind() const { return kind_; }
  const CarrierPtr& stateDom() const { return stateDom_; }
  const Monoid& monoid() const { return monoid_; }
  bool same(const Effect& o) const;
  std::string describe() const;

 private:
  Effect() = default;
  EffectKind kind_ = EffectKind::Identity;
  CarrierPtr stateDom_;
  Monoid monoid_ = Monoid::freeList(Carrier::unit());
};

/// A computation in one of the supported monads, with results drawn from a
/// value carrier (indices). Which fields are live depends on the effect kind:
///   Identity: v
///   Maybe:    has, v
///   List:     items
///   Writer:   log, v
///   State:    table[s] = (value, next state), total over the state domain
struct EffectValue {
  int v = -1;
  bool has = false;
  std::vector<int> items;
  MonoidVal log;
  std::vector<std::pair<int, int>> table;

  bool operator==(const EffectValue&) const = default;
};

EffectValue ret(const Effect& e, int a);
EffectValue bind(const Effect& e, const EffectValue& m,
                 const std::function<EffectValue(int)>& f);
/// Extensional equality; for State this compares the full tables.
bool effectEq(const Effect& e, const EffectValue& a, const EffectValue& b);
/// Maybe and List only; other tags throw UnsupportedMembership.
bool member(const Effect& e, int x, const EffectValue& m);
/// Structure-preserving value relabeling (the functor action).
EffectValue mapEffect(const Effect& e, const EffectValue& m,
                      const std::function<int(int)>& f);
/// Pair two computations into one over a pair domain when their effect
/// structure agrees exactly (same shape/log/state threading); nullopt when no
/// such pairing exists. This is the canonical witness-builder for base maps.
std::optional<EffectValue> zipEffect(const Effect& e, const EffectValue& ma,
                                     const EffectValue& mb,
                                     const std::function<int(int, int)>& pairIdx);

std::string renderEffect(const Effect& e, const Carrier& value,
                         const EffectValue& m);

/// All effect values over the given value carrier, deterministically ordered
/// (declaration order, then lexicographic over tables/words). Lists and free
/// Writer logs are capped at the given length.
std::vector<EffectValue> enumerateEffectValues(const Effect& e,
                                               const Carrier& value,
                                               int listCap = 2);

/// Injectable monad operations, used to validate the checker against
/// deliberately broken instances.
struct MonadOps {
  std::function<EffectValue(int)> ret;
  std::function<EffectValue(const EffectValue&,
                            const std::function<EffectValue(int)>&)>
      bind;
};

/// Left unit, right unit and associativity, exhaustively over all values and
/// all tabulated functions carrier -> EffectValue. Throws BoundExceeded when
/// the function space (or the associativity work estimate) is out of budget.
LawReport checkMonadLaws(const Effect& e, const CarrierPtr& carrier,
                         const MonadOps* ops = nullptr,
                         long long budget = kDefaultBudget);

struct CommutativityResult {
  bool commutative = true;
  std::string xText, yText;  // first non-commuting pair, when any
  EffectValue x, y;
};

/// do {a<-x; b<-y; ret (a,b)} versus do {b<-y; a<-x; ret (a,b)} over all
/// pairs of effect values.
CommutativityResult checkCommutative(const Effect& e, const CarrierPtr& carrier,
                                     long long budget = kDefaultBudget);

using MemberFn = std::function<bool(int, const EffectValue&)>;

/// x in ret y iff x = y, and y in (m >>= f) iff some x in m has y in f x.
LawReport checkMembershipLaws(const Effect& e, const CarrierPtr& carrier,
                              const MemberFn* memberFn = nullptr,
                              long long budget = kDefaultBudget);

}  // namespace bxlens
