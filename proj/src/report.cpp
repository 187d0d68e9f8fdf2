#include "bxlens/report.hpp"

namespace bxlens {

std::string Violation::describe() const {
  std::string s = "law=" + law;
  for (const auto& [k, v] : where) s += " " + k + "=" + v;
  s += " lhs=" + lhs + " rhs=" + rhs;
  if (!note.empty()) s += " note=" + note;
  return s;
}

bool LawReport::hasLaw(const std::string& law) const {
  return firstOf(law) != nullptr;
}

const Violation* LawReport::firstOf(const std::string& law) const {
  for (const auto& v : violations)
    if (v.law == law) return &v;
  return nullptr;
}

void LawReport::merge(const LawReport& other) {
  violations.insert(violations.end(), other.violations.begin(),
                    other.violations.end());
}

std::string LawReport::describe() const {
  if (pass()) return "pass";
  std::string s;
  for (const auto& v : violations) {
    if (!s.empty()) s += "\n";
    s += v.describe();
  }
  return s;
}

}  // namespace bxlens
