#pragma once

#include <stdexcept>
#include <string>

namespace bxlens {

struct CarrierMismatch : std::runtime_error {
  explicit CarrierMismatch(const std::string& what) : std::runtime_error(what) {}
};

struct TagMismatch : std::runtime_error {
  explicit TagMismatch(const std::string& what) : std::runtime_error(what) {}
};

struct UnsupportedMembership : std::runtime_error {
  explicit UnsupportedMembership(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when an exhaustive enumeration would exceed the configured budget.
struct BoundExceeded : std::runtime_error {
  explicit BoundExceeded(const std::string& what) : std::runtime_error(what) {}
};

// A join- or triple-built lens produced a pair/triple outside its state
// carrier. Raised at application time; law checkers convert it to a report.
struct ConsistencyViolation : std::runtime_error {
  explicit ConsistencyViolation(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidWitness : std::runtime_error {
  explicit InvalidWitness(const std::string& what) : std::runtime_error(what) {}
};

struct NonPureInput : std::runtime_error {
  explicit NonPureInput(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidChain : std::runtime_error {
  explicit InvalidChain(const std::string& what) : std::runtime_error(what) {}
};

struct ParseError : std::runtime_error {
  int line;
  int col;
  ParseError(int line_, int col_, const std::string& msg)
      : std::runtime_error("parse error at " + std::to_string(line_) + ":" +
                           std::to_string(col_) + ": " + msg),
        line(line_), col(col_) {}
};

inline constexpr long long kDefaultBudget = 1'000'000;

}  // namespace bxlens
