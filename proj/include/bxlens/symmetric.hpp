#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bxlens/effects.hpp"

namespace bxlens {

/// Pure symmetric lens between carriers A (left) and B (right) with a
/// complement C and a designated missing element.
struct SLens {
  CarrierPtr left;
  CarrierPtr right;
  CarrierPtr complement;
  std::function<std::pair<int, int>(int, int)> putR;  // (a, c) -> (b, c')
  std::function<std::pair<int, int>(int, int)> putL;  // (b, c) -> (a, c')
  int missing = 0;
  std::string name = "slens";
};

/// Symmetric lens whose puts run in an effect. mputR yields values over the
/// pair domain right x complement encoded as b * |C| + c (product order), and
/// mputL over left x complement as a * |C| + c.
struct SMLens {
  EffectPtr effect;
  CarrierPtr left;
  CarrierPtr right;
  CarrierPtr complement;
  std::function<EffectValue(int, int)> mputR;  // (a, c) -> M (b, c')
  std::function<EffectValue(int, int)> mputL;  // (b, c) -> M (a, c')
  int missing = 0;
  std::string name = "smlens";

  int rightPairIdx(int b, int c) const { return b * complement->size() + c; }
  int leftPairIdx(int a, int c) const { return a * complement->size() + c; }
};

SLens idSLens(const CarrierPtr& values);

/// Composition pairs the complements; putR threads left-to-right, putL
/// right-to-left. missing = (missing1, missing2).
SLens composeS(const SLens& sl1, const SLens& sl2);

/// Monadic counterpart of composeS. Not law-preserving in general; see
/// setBool for the canonical failure.
SMLens composeSM(const SMLens& sl1, const SMLens& sl2);

/// Lift a pure symmetric lens into an effect; puts just return.
SMLens liftSLens(const EffectPtr& tag, const SLens& sl);

/// Unit carriers over State {F, T}; every put sets the state to b.
SMLens setBool(bool b);

/// Unit carriers over Maybe; both puts are Nothing.
SMLens failLens();

/// PutRL / PutLR: a put followed by the opposite put restores the input and
/// keeps the new complement.
LawReport checkSymmetricLaws(const SLens& sl);

/// PutRLM / PutLRM, compared with effectEq:
///   do { (b,c') <- mputR (a,c); mputL (b,c') } =
///   do { (b,c') <- mputR (a,c); return (a,c') }
LawReport checkSymmetricLaws(const SMLens& sl);

/// A complement relation witnessing symmetric-lens equivalence.
struct SLensEquivWitness {
  std::vector<std::pair<int, int>> pairs;  // sorted (c1, c2) index pairs

  bool contains(int c1, int c2) const;
};

/// Checks the witness: the missing pair belongs to R, and for every pair in R
/// both lenses produce the same value output and an R-related complement pair
/// on every putR and putL input.
LawReport verifySLensEquiv(const SLens& sl1, const SLens& sl2,
                           const SLensEquivWitness& w);

/// Decides equivalence by growing the forced closure of {(missing1,
/// missing2)} under both puts; a value-output disagreement anywhere in the
/// closure refutes every candidate relation. Throws BoundExceeded when
/// |C1| * |C2| exceeds the budget.
std::optional<SLensEquivWitness> searchSLensEquiv(
    const SLens& sl1, const SLens& sl2, long long budget = kDefaultBudget);

}  // namespace bxlens
