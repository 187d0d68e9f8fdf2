#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bxlens/equivalence.hpp"
#include "bxlens/symmetric.hpp"

namespace bxlens {

struct CarrierDecl {
  std::string name;
  CarrierPtr carrier;
};

struct EffectDecl {
  EffectPtr effect;
  std::string stateCarrier;   // set for state effects
  std::string writerCarrier;  // set for writer effects
};

/// Table-backed definitions keep the parsed tables next to the built object
/// so files can be rendered back and compared structurally.
struct PureLensDef {
  std::string name, source, view;
  std::vector<int> get;              // [a] -> b
  std::vector<int> put;              // [a * |B| + b] -> a'
  std::optional<std::vector<int>> create;
  PureLens lens;
};

struct MLensDef {
  std::string name, source, view;
  EffectPtr effect;
  std::vector<int> get;
  std::vector<EffectValue> put;      // [a * |B| + b] -> M A
  std::optional<std::vector<EffectValue>> create;
  MLens lens;
};

struct SLensDef {
  std::string name, left, right, complement;
  int missing = 0;
  std::vector<std::pair<int, int>> putR;  // [a * |C| + c] -> (b, c')
  std::vector<std::pair<int, int>> putL;  // [b * |C| + c] -> (a, c')
  SLens lens;
};

struct SMLensDef {
  std::string name, left, right, complement;
  EffectPtr effect;
  int missing = 0;
  std::vector<EffectValue> putR;  // [a * |C| + c] -> M (B x C), encoded
  std::vector<EffectValue> putL;  // [b * |C| + c] -> M (A x C), encoded
  SMLens lens;
};

struct SpanDef {
  std::string name, left, right;  // mlens names sharing source and effect
  Span span;
};

enum class DirectiveKind { Check, Compose, Equiv };

/// check NAME | compose KIND NEW = X Y | equiv KIND SP1 SP2.
/// Compose directives register NEW for later reference; the object itself is
/// built when the file is executed.
struct Directive {
  DirectiveKind kind = DirectiveKind::Check;
  std::string objKind;             // compose: pure|mlens|slens|smlens|span
                                   // equiv:   iso|span|bisim
  std::vector<std::string> names;  // check: N; compose: NEW X Y; equiv: SP1 SP2
};

enum class StmtKind {
  CarrierS,
  EffectS,
  PureS,
  MS,
  SS,
  SMS,
  SpanS,
  DirectiveS
};

struct LensFile {
  std::vector<CarrierDecl> carriers;
  std::vector<EffectDecl> effects;
  std::vector<PureLensDef> pures;
  std::vector<MLensDef> mlenses;
  std::vector<SLensDef> slenses;
  std::vector<SMLensDef> smlenses;
  std::vector<SpanDef> spans;
  std::vector<Directive> directives;
  /// Statement order as written, for rendering and execution.
  std::vector<std::pair<StmtKind, int>> order;

  const CarrierDecl* findCarrier(const std::string& n) const;
  const PureLensDef* findPure(const std::string& n) const;
  const MLensDef* findMLens(const std::string& n) const;
  const SLensDef* findSLens(const std::string& n) const;
  const SMLensDef* findSMLens(const std::string& n) const;
  const SpanDef* findSpan(const std::string& n) const;
};

/// Parses and validates. Tables must be total over their declared carriers,
/// every name must be declared before use, and effect literals must match the
/// ambient effect declaration. Throws ParseError with a position.
LensFile parseLensFile(const std::string& text);

/// Canonical text form; parsing it back yields a structurally equal model.
std::string renderLensFile(const LensFile& f);

/// Structural model equality: declarations, tables, directives and statement
/// order all agree.
bool lensFileEq(const LensFile& a, const LensFile& b);

}  // namespace bxlens
