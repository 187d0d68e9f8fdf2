#pragma once

#include <string>
#include <utility>
#include <vector>

namespace bxlens {

/// One law violation: the law's name, the input binding that broke it, and
/// the two rendered sides that failed to agree. Checkers record the first
/// violating binding per law, in enumeration order.
struct Violation {
  std::string law;
  std::vector<std::pair<std::string, std::string>> where;
  std::string lhs;
  std::string rhs;
  std::string note;

  std::string describe() const;
};

struct LawReport {
  std::vector<Violation> violations;

  bool pass() const { return violations.empty(); }
  bool hasLaw(const std::string& law) const;
  const Violation* firstOf(const std::string& law) const;
  void merge(const LawReport& other);
  std::string describe() const;  // "pass" or one line per violation
};

}  // namespace bxlens
