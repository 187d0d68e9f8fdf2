#pragma once

#include <functional>
#include <string>

#include "bxlens/effects.hpp"
#include "bxlens/lens_core.hpp"

namespace bxlens {

/// Monadic lens: pure total get, effectful put and (optionally) create.
struct MLens {
  EffectPtr effect;
  CarrierPtr source;
  CarrierPtr view;
  std::function<int(int)> mget;                 // source -> view
  std::function<EffectValue(int, int)> mput;    // (source, view) -> M source
  std::function<EffectValue(int)> mcreate;      // view -> M source; optional
  std::string name = "mlens";

  bool hasCreate() const { return static_cast<bool>(mcreate); }
};

/// Naive variant where get is effectful as well. Kept as a separate type: its
/// laws are strictly weaker and do not survive composition.
struct NaiveMLens {
  EffectPtr effect;
  CarrierPtr source;
  CarrierPtr view;
  std::function<EffectValue(int)> mget;         // source -> M view
  std::function<EffectValue(int, int)> mput;    // (source, view) -> M source
  std::string name = "naive";
};

/// Put-based variant: pure get, effectful put, laws stated through effect
/// membership. Only Maybe and List effects support it.
struct PutLens {
  EffectPtr effect;
  CarrierPtr source;
  CarrierPtr view;
  std::function<int(int)> mget;                 // source -> view
  std::function<EffectValue(int, int)> mput;    // (source, view) -> M source
  std::string name = "putlens";
};

/// Lift a pure lens: puts and creates just return. Preserves all laws.
MLens lens2mlens(const EffectPtr& tag, const PureLens& l);

/// Left-to-right composition; put threads the inner result outward:
///   mput a c = do { b <- l2.mput (l1.mget a) c; l1.mput a b }
MLens composeM(const MLens& l1, const MLens& l2);

/// View-constant lens over Maybe: put succeeds only when the view did not
/// change; create accepts only the constant and rebuilds a default source.
MLens constMLens(const CarrierPtr& source, const CarrierPtr& view, int b,
                 int dflt);

/// Absolute value over the integer range [-n, n] (view is the same range).
/// put restores the old sign and fails (Nothing) on negative views; create
/// fails on negative views and embeds nonnegative ones.
MLens absLens(int n);

/// Wraps a pure lens with a Writer effect over the free list monoid on the
/// source carrier, logging the old source whenever put actually changes it.
MLens logLens(const PureLens& l);

/// MGetPut, MPutGet, MCreateGet, exhaustive over source x view. The two
/// continuation laws are checked at k = pair-return, which suffices. An empty
/// source with a nonempty view is reported as an MGetPut violation: no total
/// put into an empty source exists.
LawReport checkMLensLaws(const MLens& l);

/// Naive composition:
///   mget a = do { b <- l1.mget a; l2.mget b }
///   mput a c = do { b <- l1.mget a; b' <- l2.mput b c; l1.mput a b' }
NaiveMLens composeNaive(const NaiveMLens& l1, const NaiveMLens& l2);

/// MGetPut0 (get then put restores) and MPutGet0 (get after put sees the put
/// view), both stated inside the effect.
LawReport checkNaiveLaws(const NaiveMLens& l);

/// View an MLens as a NaiveMLens (get becomes return . get).
NaiveMLens asNaive(const MLens& l);

/// Strip the Identity wrapper from an Identity-effect MLens. Throws
/// NonPureInput for any other effect.
PureLens toPure(const MLens& l);

/// View an MLens as a PutLens (drops create).
PutLens asPutLens(const MLens& l);

struct NaiveSearchResult {
  bool found = false;
  int sizeA = 0, sizeB = 0, sizeC = 0;
  NaiveMLens left, right;          // individually law-abiding
  std::string leftText, rightText; // rendered tables
  Violation violation;             // first law the composite breaks
  long long candidatesTried = 0;   // raw table count scanned
  long long pairsTried = 0;        // law-abiding pairs composed
  long long lawfulLeft = 0;        // law-abiding lens counts at the last shape
  long long lawfulRight = 0;
};

/// Exhaustively enumerates naive lens pairs A -> B -> C over the given effect
/// with |A| <= maxA and |B|, |C| <= maxB (carriers a0.., b0.., c0..), keeps
/// the pairs whose components pass checkNaiveLaws, and returns the first pair
/// whose composition violates a law. Throws BoundExceeded when the raw table
/// count estimate exceeds the budget.
NaiveSearchResult searchNaiveCounterexample(const EffectPtr& effect, int maxA,
                                            int maxB,
                                            long long budget = kDefaultBudget);

/// MGetPut1 (put of the current view returns the source) and MPutGet1 (every
/// source a put can return shows the put view). Throws UnsupportedMembership
/// unless the effect is Maybe or List.
LawReport checkPutLensLaws(const PutLens& l);

}  // namespace bxlens
