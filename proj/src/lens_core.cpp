#include "bxlens/lens_core.hpp"

#include <stdexcept>

namespace bxlens {

PureLens idLens(const CarrierPtr& s) {
  PureLens l;
  l.source = s;
  l.view = s;
  l.get = [](int a) { return a; };
  l.put = [](int, int v) { return v; };
  l.create = [](int v) { return v; };
  l.name = "id[" + s->name() + "]";
  return l;
}

PureLens fstLens(const CarrierPtr& prod) {
  if (prod->parents().size() != 2)
    throw std::invalid_argument("fstLens needs a product carrier");
  PureLens l;
  l.source = prod;
  l.view = prod->parents()[0];
  const CarrierPtr& snd = prod->parents()[1];
  if (snd->size() == 0)
    throw std::invalid_argument("fstLens needs a nonempty second factor");
  l.get = [prod](int s) { return prod->comps(s)[0]; };
  l.put = [prod](int s, int v) {
    return prod->indexOfComps({v, prod->comps(s)[1]});
  };
  l.create = [prod](int v) { return prod->indexOfComps({v, 0}); };
  l.name = "fst[" + prod->name() + "]";
  return l;
}

PureLens composePure(const PureLens& l1, const PureLens& l2) {
  requireSameCarrier(l1.view, l2.source, "composePure");
  PureLens l;
  l.source = l1.source;
  l.view = l2.view;
  l.get = [l1, l2](int a) { return l2.get(l1.get(a)); };
  l.put = [l1, l2](int a, int c) { return l1.put(a, l2.put(l1.get(a), c)); };
  if (l1.full() && l2.full())
    l.create = [l1, l2](int c) { return l1.create(l2.create(c)); };
  l.name = l1.name + ";" + l2.name;
  return l;
}

LawReport checkPureLaws(const PureLens& l) {
  LawReport report;
  const Carrier& src = *l.source;
  const Carrier& view = *l.view;

  for (int s = 0; s < src.size(); ++s) {
    int s2 = l.put(s, l.get(s));
    if (s2 != s) {
      report.violations.push_back({"GetPut",
                                   {{"s", src.elem(s)}},
                                   src.elem(s2),
                                   src.elem(s),
                                   ""});
      break;
    }
  }

  bool broken = false;
  for (int s = 0; s < src.size() && !broken; ++s)
    for (int v = 0; v < view.size() && !broken; ++v) {
      int got = l.get(l.put(s, v));
      if (got != v) {
        report.violations.push_back({"PutGet",
                                     {{"s", src.elem(s)}, {"v", view.elem(v)}},
                                     view.elem(got),
                                     view.elem(v),
                                     ""});
        broken = true;
      }
    }

  if (l.full()) {
    if (src.size() == 0 && view.size() > 0) {
      report.violations.push_back(
          {"CreateGet",
           {{"v", view.elem(0)}},
           "(no source)",
           view.elem(0),
           "empty source cannot realize any view element"});
      return report;
    }
    for (int v = 0; v < view.size(); ++v) {
      int got = l.get(l.create(v));
      if (got != v) {
        report.violations.push_back({"CreateGet",
                                     {{"v", view.elem(v)}},
                                     view.elem(got),
                                     view.elem(v),
                                     ""});
        break;
      }
    }
  }
  return report;
}

}  // namespace bxlens
