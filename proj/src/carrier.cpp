#include "bxlens/carrier.hpp"

#include "bxlens/errors.hpp"

namespace bxlens {

Carrier::Carrier(std::string name, std::vector<std::string> elems)
    : name_(std::move(name)), elems_(std::move(elems)) {}

CarrierPtr Carrier::make(std::string name, std::vector<std::string> elems) {
  return std::make_shared<Carrier>(std::move(name), std::move(elems));
}

CarrierPtr Carrier::unit() {
  static CarrierPtr u = make("unit", {"()"});
  return u;
}

int Carrier::find(const std::string& e) const {
  for (int i = 0; i < size(); ++i)
    if (elems_[i] == e) return i;
  return -1;
}

int Carrier::indexOfComps(const std::vector<int>& c) const {
  for (int i = 0; i < size(); ++i)
    if (comps_[i] == c) return i;
  return -1;
}

static std::string pairName(const std::string& a, const std::string& b) {
  return "(" + a + "," + b + ")";
}

CarrierPtr Carrier::product(const CarrierPtr& a, const CarrierPtr& b) {
  auto c = std::make_shared<Carrier>(a->name() + "*" + b->name(),
                                     std::vector<std::string>{});
  c->parents_ = {a, b};
  for (int i = 0; i < a->size(); ++i)
    for (int j = 0; j < b->size(); ++j) {
      c->elems_.push_back(pairName(a->elem(i), b->elem(j)));
      c->comps_.push_back({i, j});
    }
  return c;
}

CarrierPtr Carrier::filteredProduct(std::string name, const CarrierPtr& a,
                                    const CarrierPtr& b,
                                    const std::function<bool(int, int)>& keep) {
  auto c = std::make_shared<Carrier>(std::move(name), std::vector<std::string>{});
  c->parents_ = {a, b};
  for (int i = 0; i < a->size(); ++i)
    for (int j = 0; j < b->size(); ++j)
      if (keep(i, j)) {
        c->elems_.push_back(pairName(a->elem(i), b->elem(j)));
        c->comps_.push_back({i, j});
      }
  return c;
}

CarrierPtr Carrier::filteredProduct3(std::string name, const CarrierPtr& a,
                                     const CarrierPtr& b, const CarrierPtr& c,
                                     const std::function<bool(int, int, int)>& keep) {
  auto r = std::make_shared<Carrier>(std::move(name), std::vector<std::string>{});
  r->parents_ = {a, b, c};
  for (int i = 0; i < a->size(); ++i)
    for (int j = 0; j < b->size(); ++j)
      for (int k = 0; k < c->size(); ++k)
        if (keep(i, j, k)) {
          r->elems_.push_back("(" + a->elem(i) + "," + b->elem(j) + "," +
                              c->elem(k) + ")");
          r->comps_.push_back({i, j, k});
        }
  return r;
}

CarrierPtr Carrier::maybeLift(const CarrierPtr& s) {
  auto c = std::make_shared<Carrier>("maybe " + s->name(),
                                     std::vector<std::string>{});
  c->parents_ = {s};
  c->elems_.push_back("nothing");
  c->comps_.push_back({});
  for (int i = 0; i < s->size(); ++i) {
    c->elems_.push_back("just " + s->elem(i));
    c->comps_.push_back({i});
  }
  return c;
}

bool carrierEq(const Carrier& a, const Carrier& b) {
  return a.elems() == b.elems();
}

bool carrierEq(const CarrierPtr& a, const CarrierPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return carrierEq(*a, *b);
}

void requireSameCarrier(const CarrierPtr& a, const CarrierPtr& b,
                        const std::string& context) {
  if (!carrierEq(a, b))
    throw CarrierMismatch(context + ": carrier " + a->name() +
                          " does not match " + b->name());
}

}  // namespace bxlens
