#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace bxlens {

class Carrier;
using CarrierPtr = std::shared_ptr<const Carrier>;

/// A named finite value domain. Elements are identified by index in
/// declaration order, and every enumeration in the library walks indices
/// ascending, so "first witness" results are reproducible.
///
/// Derived carriers (products, filtered products, Maybe-lifting) remember the
/// parent domains and the component indices of each element, which keeps
/// projections and pair lookups cheap and gives elements printable names.
class Carrier {
 public:
  Carrier(std::string name, std::vector<std::string> elems);

  static CarrierPtr make(std::string name, std::vector<std::string> elems);
  static CarrierPtr unit();  // one element, "()"

  static CarrierPtr product(const CarrierPtr& a, const CarrierPtr& b);
  static CarrierPtr filteredProduct(std::string name, const CarrierPtr& a,
                                    const CarrierPtr& b,
                                    const std::function<bool(int, int)>& keep);
  static CarrierPtr filteredProduct3(std::string name, const CarrierPtr& a,
                                     const CarrierPtr& b, const CarrierPtr& c,
                                     const std::function<bool(int, int, int)>& keep);
  /// "nothing" plus one "just x" per element of s; "nothing" is index 0.
  static CarrierPtr maybeLift(const CarrierPtr& s);

  int size() const { return static_cast<int>(elems_.size()); }
  const std::string& name() const { return name_; }
  const std::string& elem(int i) const { return elems_.at(i); }
  const std::vector<std::string>& elems() const { return elems_; }
  int find(const std::string& e) const;  // -1 if absent

  bool derived() const { return !parents_.empty(); }
  const std::vector<CarrierPtr>& parents() const { return parents_; }
  /// Component indices of element i in the parent carriers. For maybeLift,
  /// "nothing" has no components and "just x" has one.
  const std::vector<int>& comps(int i) const { return comps_.at(i); }
  /// Index of the element with the given components, or -1.
  int indexOfComps(const std::vector<int>& c) const;

 private:
  std::string name_;
  std::vector<std::string> elems_;
  std::vector<CarrierPtr> parents_;
  std::vector<std::vector<int>> comps_;
};

/// Structural equality: same element names in the same order.
bool carrierEq(const Carrier& a, const Carrier& b);
bool carrierEq(const CarrierPtr& a, const CarrierPtr& b);

void requireSameCarrier(const CarrierPtr& a, const CarrierPtr& b,
                        const std::string& context);

}  // namespace bxlens
