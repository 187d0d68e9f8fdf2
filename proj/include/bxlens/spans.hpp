#pragma once

#include <string>

#include "bxlens/mlens.hpp"
#include "bxlens/symmetric.hpp"

namespace bxlens {

/// Two monadic lenses out of a shared state carrier, one per view.
struct Span {
  CarrierPtr state;
  MLens left;   // state -> A
  MLens right;  // state -> B
  std::string name = "span";
  std::string note;  // degeneracy observed at construction, if any

  const EffectPtr& effect() const { return left.effect; }
};

/// Pure counterpart, used by the equivalence constructions.
struct PureSpan {
  CarrierPtr state;
  PureLens left;
  PureLens right;
};

/// Both legs are the lifted identity lens.
Span identitySpan(const EffectPtr& tag, const CarrierPtr& s);

/// Compose a lens onto the left leg; the right leg is untouched.
Span extendLeft(const MLens& ml, const Span& sp);

/// Compose a lens onto the right leg; the left leg is untouched.
Span extendRight(const Span& sp, const MLens& ml);

/// Join a cospan (two lenses into a shared view) into a span over the carrier
/// of consistent state pairs {(s1,s2) | l1.mget s1 = l2.mget s2}. Leg puts
/// push the new state's view through the opposite lens. Produced pairs are
/// checked against the consistency predicate at application time; a failure
/// (possible only for non-law-abiding inputs) throws ConsistencyViolation.
Span join(const MLens& l1, const MLens& l2);

/// Pure specialization of join.
PureSpan joinPure(const PureLens& l1, const PureLens& l2);

/// Extends the join of the middle cospan (sp1.right, sp2.left) with the two
/// outer legs.
Span composeSpan(const Span& sp1, const Span& sp2);

/// Lift both legs into an effect.
Span liftPureSpan(const EffectPtr& tag, const PureSpan& sp);

/// Turn a span into a symmetric lens whose complement is the Maybe-lifted
/// state (nothing = missing). Puts route through the stored state when
/// present and through the leg creates otherwise.
SMLens span2smlens(const Span& sp);

/// The carrier of triples (a, b, c) with mputR(a,c) = return (b,c) and
/// mputL(b,c) = return (a,c).
CarrierPtr computeConsistentTriples(const SMLens& sl);

/// Turn a symmetric lens into a span over its consistent triples. Leg puts
/// route through mputR/mputL; creates use the missing complement. Produced
/// triples outside the carrier throw ConsistencyViolation at application.
/// When the triple carrier is empty but the value carriers are not, the
/// span's note records the degeneracy.
Span smlens2span(const SMLens& sl);

/// Law reports of both legs (tagged with leg=left/right), preceded by a
/// consistency audit: every mput/mcreate cell of each leg is evaluated and
/// ConsistencyViolation is converted into a report entry instead of a crash.
LawReport checkSpanWB(const Span& sp);

}  // namespace bxlens
