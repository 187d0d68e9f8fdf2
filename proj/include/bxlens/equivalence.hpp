#pragma once

#include <optional>
#include <vector>

#include "bxlens/spans.hpp"

namespace bxlens {

/// Total state mapping; index i holds the image of state i.
using BaseMap = std::vector<int>;

/// The three defining equations of a base map h between lenses sharing a
/// view: mget agreement, and h commuting with mput and mcreate inside the
/// effect.
LawReport checkBaseMap(const BaseMap& h, const MLens& l1, const MLens& l2);

/// State-space bijection commuting with both legs.
struct IsoWitness {
  std::vector<int> h;     // S1 -> S2
  std::vector<int> hInv;  // S2 -> S1
};

enum class Direction { Forward, Backward };

/// A full well-behaved pure lens between state spaces whose composition with
/// the target span's legs recovers the source span's legs. Forward: h maps
/// the first span's states to the second's; Backward: the reverse.
struct SpanEquivWitness {
  PureLens h;
  Direction direction = Direction::Forward;
};

/// A relation R (explicit pair carrier over S1 x S2) carrying a span whose
/// two projections are base maps into the related spans.
struct BisimWitness {
  CarrierPtr relation;
  Span span;
};

LawReport verifyEquivalence(const Span& sp1, const Span& sp2,
                            const IsoWitness& w);
LawReport verifyEquivalence(const Span& sp1, const Span& sp2,
                            const SpanEquivWitness& w);
LawReport verifyEquivalence(const Span& sp1, const Span& sp2,
                            const BisimWitness& w);

/// Distinct state-space cardinalities refute immediately; otherwise
/// enumerates bijections in lexicographic order.
std::optional<IsoWitness> searchIsoEquivalence(const Span& sp1, const Span& sp2,
                                               long long budget = kDefaultBudget);

/// Constrained enumeration of full pure lens witnesses, forward direction
/// first: get tables are drawn from the pointwise solutions of the leg-get
/// equations, put tables from the lens-law fibers, creates last. Returns the
/// first witness in enumeration order.
std::optional<SpanEquivWitness> searchSpanEquivalence(
    const Span& sp1, const Span& sp2, long long budget = kDefaultBudget);

/// Deterministic closure search: the relation is seeded by pairing the two
/// spans' creates and closed under paired puts; any pairing failure or
/// get-disagreement on a forced pair refutes every candidate. Needs creates
/// on all four legs.
std::optional<BisimWitness> searchBisimEquivalence(
    const Span& sp1, const Span& sp2, long long budget = kDefaultBudget);

/// View an isomorphism as a (full, well-behaved) forward span witness.
SpanEquivWitness isoToSpanWitness(const Span& sp1, const Span& sp2,
                                  const IsoWitness& w);

/// Builds the graph relation R = {(s, h s)} (or its flip for a backward
/// witness) and the span over R whose puts run one span's puts and reapply h.
/// Throws InvalidWitness unless the span witness verifies.
BisimWitness bisimFromSpanWitness(const Span& sp1, const Span& sp2,
                                  const SpanEquivWitness& w);

/// The pure-span construction extracted from a bisimulation: both legs act
/// through the bisimulation span's left leg, feeding it the image of the new
/// state under the corresponding span's left get.
struct PureSpanWitness {
  PureLens l;      // relation -> S1
  PureLens r;      // relation -> S2
  LawReport post;  // leg equations and both pure law suites, as checked
};

/// Identity-effect spans only (NonPureInput otherwise); the witness must
/// verify (InvalidWitness). The returned report records which of the
/// postconditions hold; callers decide what to do with failures.
PureSpanWitness spanWitnessFromBisim(const Span& sp1, const Span& sp2,
                                     const BisimWitness& w);

/// One step of an equivalence chain: the next span plus the witness relating
/// the previous span to it.
struct ChainStep {
  Span span;
  SpanEquivWitness witness;
};

/// Collapses a verified chain of single-step span equivalences into one pure
/// span connecting the first and last state spaces, flipping forward steps
/// through the pure join. Pure spans only; every step is re-verified
/// (InvalidChain).
Span normalizeEquivChain(const Span& first, const std::vector<ChainStep>& steps);

}  // namespace bxlens
