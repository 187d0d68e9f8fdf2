#pragma once

#include <functional>
#include <string>

#include "bxlens/carrier.hpp"
#include "bxlens/report.hpp"

namespace bxlens {

/// An asymmetric lens between finite carriers, with total get/put and an
/// optional create. A lens with create that passes all three laws is "full".
struct PureLens {
  CarrierPtr source;
  CarrierPtr view;
  std::function<int(int)> get;       // source -> view
  std::function<int(int, int)> put;  // (source, new view) -> source
  std::function<int(int)> create;    // view -> source; empty when not full
  std::string name = "lens";

  bool full() const { return static_cast<bool>(create); }
};

PureLens idLens(const CarrierPtr& s);

/// Projection onto the first component of a product carrier. create pairs the
/// view with the second factor's first element.
PureLens fstLens(const CarrierPtr& prod);

/// Left-to-right composition: view of l1 is source of l2. The composite
/// create exists when both factors have one.
PureLens composePure(const PureLens& l1, const PureLens& l2);

/// GetPut, PutGet and (for lenses with create) CreateGet, checked over every
/// source/view element. An empty source with a nonempty view is reported as a
/// CreateGet violation: no create can realize any view element there.
LawReport checkPureLaws(const PureLens& l);

}  // namespace bxlens
