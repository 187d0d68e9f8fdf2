#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bxlens/lensfile.hpp"

using namespace bxlens;

namespace {

struct UsageError : std::runtime_error {
  explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

/// Deterministic key=value block appended after the human-readable report so
/// scripts can assert on specific laws without scraping prose.
class Machine {
 public:
  void set(const std::string& k, const std::string& v) {
    kv_.push_back({k, v});
  }
  void set(const std::string& k, long long v) { set(k, std::to_string(v)); }
  void print(std::ostream& os, int exitCode) const {
    os << "machine-begin\n";
    for (const auto& [k, v] : kv_) os << k << "=" << v << "\n";
    os << "exit=" << exitCode << "\n";
    os << "machine-end\n";
  }

 private:
  std::vector<std::pair<std::string, std::string>> kv_;
};

long long budgetFromEnv(long long fallback) {
  const char* s = std::getenv("BXLENS_BUDGET");
  if (!s) return fallback;
  char* end = nullptr;
  long long v = std::strtoll(s, &end, 10);
  if (end == s || *end != '\0' || v <= 0)
    throw UsageError("BXLENS_BUDGET must be a positive integer");
  return v;
}

std::string readFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

/// Every named object in a file, with compose directives materialized in
/// statement order so later directives can reference the results.
struct Objects {
  std::map<std::string, PureLens> pures;
  std::map<std::string, MLens> mlenses;
  std::map<std::string, SLens> slenses;
  std::map<std::string, SMLens> smlenses;
  std::map<std::string, Span> spans;
};

Objects materialize(const LensFile& f) {
  Objects o;
  for (const auto& d : f.pures) o.pures[d.name] = d.lens;
  for (const auto& d : f.mlenses) o.mlenses[d.name] = d.lens;
  for (const auto& d : f.slenses) o.slenses[d.name] = d.lens;
  for (const auto& d : f.smlenses) o.smlenses[d.name] = d.lens;
  for (const auto& d : f.spans) o.spans[d.name] = d.span;
  for (const auto& d : f.directives) {
    if (d.kind != DirectiveKind::Compose) continue;
    const std::string& out = d.names[0];
    const std::string& x = d.names[1];
    const std::string& y = d.names[2];
    if (d.objKind == "pure") {
      PureLens c = composePure(o.pures.at(x), o.pures.at(y));
      c.name = out;
      o.pures[out] = std::move(c);
    } else if (d.objKind == "mlens") {
      MLens c = composeM(o.mlenses.at(x), o.mlenses.at(y));
      c.name = out;
      o.mlenses[out] = std::move(c);
    } else if (d.objKind == "slens") {
      SLens c = composeS(o.slenses.at(x), o.slenses.at(y));
      c.name = out;
      o.slenses[out] = std::move(c);
    } else if (d.objKind == "smlens") {
      SMLens c = composeSM(o.smlenses.at(x), o.smlenses.at(y));
      c.name = out;
      o.smlenses[out] = std::move(c);
    } else {
      Span c = composeSpan(o.spans.at(x), o.spans.at(y));
      c.name = out;
      o.spans[out] = std::move(c);
    }
  }
  return o;
}

struct CheckOutcome {
  std::string kind;
  LawReport report;
  std::string note;
};

CheckOutcome checkByName(const Objects& o, const std::string& name) {
  if (auto it = o.pures.find(name); it != o.pures.end())
    return {"pure", checkPureLaws(it->second), ""};
  if (auto it = o.mlenses.find(name); it != o.mlenses.end())
    return {"mlens", checkMLensLaws(it->second), ""};
  if (auto it = o.slenses.find(name); it != o.slenses.end())
    return {"slens", checkSymmetricLaws(it->second), ""};
  if (auto it = o.smlenses.find(name); it != o.smlenses.end())
    return {"smlens", checkSymmetricLaws(it->second), ""};
  if (auto it = o.spans.find(name); it != o.spans.end())
    return {"span", checkSpanWB(it->second), it->second.note};
  throw UsageError("no definition named '" + name + "'");
}

/// Prints the outcome, records it in the machine block, and reports pass.
bool reportCheck(const std::string& name, const CheckOutcome& c, Machine& m) {
  std::cout << "check " << name << " (" << c.kind << "): "
            << (c.report.pass() ? "pass" : "fail") << "\n";
  if (!c.note.empty()) {
    std::cout << "  note: " << c.note << "\n";
    m.set("check." + name + ".note", c.note);
  }
  for (const auto& v : c.report.violations)
    std::cout << "  " << v.describe() << "\n";
  m.set("check." + name + ".status", c.report.pass() ? "pass" : "fail");
  if (!c.report.pass()) {
    const Violation& v = c.report.violations.front();
    m.set("check." + name + ".law", v.law);
    m.set("check." + name + ".lhs", v.lhs);
    m.set("check." + name + ".rhs", v.rhs);
    m.set("check." + name + ".violations",
          static_cast<long long>(c.report.violations.size()));
  }
  return c.report.pass();
}

std::string renderPureTables(const PureLens& h) {
  std::ostringstream os;
  const Carrier& A = *h.source;
  const Carrier& B = *h.view;
  os << "get {";
  for (int a = 0; a < A.size(); ++a) {
    os << (a ? "; " : " ") << A.elem(a) << " -> " << B.elem(h.get(a));
  }
  os << " } put {";
  for (int a = 0; a < A.size(); ++a)
    for (int b = 0; b < B.size(); ++b) {
      os << (a || b ? "; " : " ") << A.elem(a) << " " << B.elem(b) << " -> "
         << A.elem(h.put(a, b));
    }
  os << " }";
  if (h.full()) {
    os << " create {";
    for (int b = 0; b < B.size(); ++b)
      os << (b ? "; " : " ") << B.elem(b) << " -> " << A.elem(h.create(b));
    os << " }";
  }
  return os.str();
}

bool runEquiv(const std::string& kind, const std::string& aName,
              const std::string& bName, const Span& a, const Span& b,
              long long budget, Machine& m) {
  const std::string key = "equiv." + kind;
  if (kind == "iso") {
    auto w = searchIsoEquivalence(a, b, budget);
    if (!w) {
      std::cout << "iso equivalence " << aName << " ~ " << bName
                << ": not found\n";
      m.set(key + ".status", "notfound");
      return false;
    }
    std::ostringstream os;
    for (size_t s = 0; s < w->h.size(); ++s)
      os << (s ? "; " : "") << a.state->elem(static_cast<int>(s)) << " -> "
         << b.state->elem(w->h[s]);
    std::cout << "iso equivalence " << aName << " ~ " << bName
              << ": found\n  h: " << os.str() << "\n";
    m.set(key + ".status", "found");
    m.set(key + ".witness", os.str());
    return true;
  }
  if (kind == "span") {
    auto w = searchSpanEquivalence(a, b, budget);
    if (!w) {
      std::cout << "span equivalence " << aName << " ~ " << bName
                << ": not found\n";
      m.set(key + ".status", "notfound");
      return false;
    }
    const char* dir =
        w->direction == Direction::Forward ? "forward" : "backward";
    std::cout << "span equivalence " << aName << " ~ " << bName
              << ": found (" << dir << ")\n  h: " << renderPureTables(w->h)
              << "\n";
    m.set(key + ".status", "found");
    m.set(key + ".direction", dir);
    m.set(key + ".witness", renderPureTables(w->h));
    return true;
  }
  auto w = searchBisimEquivalence(a, b, budget);
  if (!w) {
    std::cout << "bisimulation " << aName << " ~ " << bName
              << ": not found\n";
    m.set(key + ".status", "notfound");
    return false;
  }
  std::ostringstream os;
  for (int r = 0; r < w->relation->size(); ++r)
    os << (r ? " " : "") << w->relation->elem(r);
  std::cout << "bisimulation " << aName << " ~ " << bName
            << ": found\n  R = { " << os.str() << " }\n";
  m.set(key + ".status", "found");
  m.set(key + ".relation", os.str());
  m.set(key + ".relation-size", static_cast<long long>(w->relation->size()));
  return true;
}

int cmdCheck(const std::string& path, const std::string& name, Machine& m) {
  LensFile f = parseLensFile(readFile(path));
  Objects o = materialize(f);
  long long budget = budgetFromEnv(kDefaultBudget);
  bool allPass = true;
  if (!name.empty()) {
    allPass = reportCheck(name, checkByName(o, name), m);
    return allPass ? 0 : 1;
  }
  bool ranAny = false;
  for (const auto& d : f.directives) {
    if (d.kind == DirectiveKind::Check) {
      ranAny = true;
      allPass &= reportCheck(d.names[0], checkByName(o, d.names[0]), m);
    } else if (d.kind == DirectiveKind::Equiv) {
      ranAny = true;
      allPass &= runEquiv(d.objKind, d.names[0], d.names[1],
                          o.spans.at(d.names[0]), o.spans.at(d.names[1]),
                          budget, m);
    }
  }
  if (!ranAny) {
    // no directives: check every definition in file order
    for (auto [kind, idx] : f.order) {
      std::string n;
      switch (kind) {
        case StmtKind::PureS: n = f.pures[idx].name; break;
        case StmtKind::MS: n = f.mlenses[idx].name; break;
        case StmtKind::SS: n = f.slenses[idx].name; break;
        case StmtKind::SMS: n = f.smlenses[idx].name; break;
        case StmtKind::SpanS: n = f.spans[idx].name; break;
        default: continue;
      }
      allPass &= reportCheck(n, checkByName(o, n), m);
    }
  }
  return allPass ? 0 : 1;
}

int cmdCompose(const std::string& path, const std::string& kind,
               const std::string& left, const std::string& right, bool check,
               Machine& m) {
  LensFile f = parseLensFile(readFile(path));
  Objects o = materialize(f);
  auto describe = [&](const std::string& what) {
    std::cout << "composed " << kind << ": " << what << "\n";
    m.set("compose.kind", kind);
    m.set("compose.result", what);
  };
  CheckOutcome outcome;
  const std::string name = left + ";" + right;
  try {
    if (kind == "pure") {
      if (!o.pures.count(left) || !o.pures.count(right))
        throw UsageError("compose pure needs two pure-lens names");
      PureLens c = composePure(o.pures.at(left), o.pures.at(right));
      c.name = name;
      describe(c.source->name() + " ~> " + c.view->name());
      outcome = {"pure", check ? checkPureLaws(c) : LawReport{}, ""};
    } else if (kind == "mlens") {
      if (!o.mlenses.count(left) || !o.mlenses.count(right))
        throw UsageError("compose mlens needs two mlens names");
      MLens c = composeM(o.mlenses.at(left), o.mlenses.at(right));
      c.name = name;
      describe(c.source->name() + " ~> " + c.view->name() + " over " +
               c.effect->describe());
      outcome = {"mlens", check ? checkMLensLaws(c) : LawReport{}, ""};
    } else if (kind == "slens") {
      if (!o.slenses.count(left) || !o.slenses.count(right))
        throw UsageError("compose slens needs two slens names");
      SLens c = composeS(o.slenses.at(left), o.slenses.at(right));
      c.name = name;
      describe(c.left->name() + " <~> " + c.right->name() + " with " +
               c.complement->name());
      outcome = {"slens", check ? checkSymmetricLaws(c) : LawReport{}, ""};
    } else if (kind == "smlens") {
      if (!o.smlenses.count(left) || !o.smlenses.count(right))
        throw UsageError("compose smlens needs two smlens names");
      SMLens c = composeSM(o.smlenses.at(left), o.smlenses.at(right));
      c.name = name;
      describe(c.left->name() + " <~> " + c.right->name() + " with " +
               c.complement->name() + " over " + c.effect->describe());
      outcome = {"smlens", check ? checkSymmetricLaws(c) : LawReport{}, ""};
    } else {
      if (!o.spans.count(left) || !o.spans.count(right))
        throw UsageError("compose span needs two span names");
      Span c = composeSpan(o.spans.at(left), o.spans.at(right));
      c.name = name;
      describe("state " + c.state->name() + " (" +
               std::to_string(c.state->size()) + " states)");
      outcome = {"span", check ? checkSpanWB(c) : LawReport{}, c.note};
    }
  } catch (const std::out_of_range&) {
    throw UsageError("unknown name in compose");
  }
  if (!check) return 0;
  return reportCheck(name, outcome, m) ? 0 : 1;
}

int cmdConvert(const std::string& path, const std::string& op,
               const std::string& name, Machine& m) {
  LensFile f = parseLensFile(readFile(path));
  Objects o = materialize(f);
  if (op == "span2smlens") {
    auto it = o.spans.find(name);
    if (it == o.spans.end()) throw UsageError("no span named '" + name + "'");
    SMLens sm = span2smlens(it->second);
    std::cout << "span2smlens " << name << ": " << sm.left->name() << " <~> "
              << sm.right->name() << " with " << sm.complement->name() << " ("
              << sm.complement->size() << " complements, missing = "
              << sm.complement->elem(sm.missing) << ")\n";
    m.set("convert.op", op);
    m.set("convert.complement-size",
          static_cast<long long>(sm.complement->size()));
    return 0;
  }
  auto it = o.smlenses.find(name);
  if (it == o.smlenses.end()) throw UsageError("no smlens named '" + name + "'");
  Span sp = smlens2span(it->second);
  std::cout << "smlens2span " << name << ": " << sp.state->size()
            << " consistent triples\n";
  if (!sp.note.empty()) std::cout << "  note: " << sp.note << "\n";
  m.set("convert.op", op);
  m.set("convert.triples", static_cast<long long>(sp.state->size()));
  if (!sp.note.empty()) m.set("convert.note", sp.note);
  return 0;
}

int cmdEquiv(const std::string& path, const std::string& kind,
             const std::string& aName, const std::string& bName,
             const std::string& witness, Machine& m) {
  LensFile f = parseLensFile(readFile(path));
  Objects o = materialize(f);
  auto ia = o.spans.find(aName);
  auto ib = o.spans.find(bName);
  if (ia == o.spans.end()) throw UsageError("no span named '" + aName + "'");
  if (ib == o.spans.end()) throw UsageError("no span named '" + bName + "'");
  const Span& a = ia->second;
  const Span& b = ib->second;

  if (witness.empty()) {
    long long budget = budgetFromEnv(kDefaultBudget);
    return runEquiv(kind, aName, bName, a, b, budget, m) ? 0 : 1;
  }

  const std::string key = "equiv." + kind;
  LawReport rep;
  if (kind == "iso") {
    auto it = o.pures.find(witness);
    if (it == o.pures.end())
      throw UsageError("iso witnesses are pure-lens names");
    const PureLens& h = it->second;
    if (!carrierEq(h.source, a.state) || !carrierEq(h.view, b.state))
      throw UsageError("witness carriers do not match the two state spaces");
    IsoWitness w;
    w.h.resize(a.state->size());
    w.hInv.assign(b.state->size(), -1);
    bool bijective = a.state->size() == b.state->size();
    for (int s = 0; s < a.state->size() && bijective; ++s) {
      w.h[s] = h.get(s);
      if (w.hInv[w.h[s]] >= 0)
        bijective = false;
      else
        w.hInv[w.h[s]] = s;
    }
    if (!bijective) {
      std::cout << "iso witness " << witness << ": not a bijection\n";
      m.set(key + ".status", "fail");
      return 1;
    }
    rep = verifyEquivalence(a, b, w);
  } else if (kind == "span") {
    auto it = o.pures.find(witness);
    if (it == o.pures.end())
      throw UsageError("span witnesses are pure-lens names");
    SpanEquivWitness w;
    w.h = it->second;
    if (carrierEq(w.h.source, a.state) && carrierEq(w.h.view, b.state))
      w.direction = Direction::Forward;
    else if (carrierEq(w.h.source, b.state) && carrierEq(w.h.view, a.state))
      w.direction = Direction::Backward;
    else
      throw UsageError("witness carriers do not match the two state spaces");
    m.set(key + ".direction",
          w.direction == Direction::Forward ? "forward" : "backward");
    rep = verifyEquivalence(a, b, w);
  } else {
    throw UsageError("bisimulation witnesses are search-only; use --search");
  }
  std::cout << "equiv " << kind << " " << aName << " ~ " << bName
            << " via " << witness << ": " << (rep.pass() ? "pass" : "fail")
            << "\n";
  for (const auto& v : rep.violations) std::cout << "  " << v.describe() << "\n";
  m.set(key + ".status", rep.pass() ? "pass" : "fail");
  if (!rep.pass()) m.set(key + ".law", rep.violations.front().law);
  return rep.pass() ? 0 : 1;
}

int demoSetboolCompose(Machine& m) {
  m.set("demo", "setbool-compose");
  SMLens setT = setBool(true);
  SMLens setF = setBool(false);
  bool ok = true;
  ok &= reportCheck("setT", {"smlens", checkSymmetricLaws(setT), ""}, m);
  ok &= reportCheck("setF", {"smlens", checkSymmetricLaws(setF), ""}, m);
  SMLens comp = composeSM(setT, setF);
  ok &= reportCheck("setT;setF", {"smlens", checkSymmetricLaws(comp), ""}, m);
  return ok ? 0 : 1;
}

int demoFailSpan(Machine& m) {
  m.set("demo", "fail-span");
  SMLens fail = failLens();
  CarrierPtr triples = computeConsistentTriples(fail);
  std::cout << "consistent triples: " << triples->size() << "\n";
  m.set("triples", static_cast<long long>(triples->size()));
  Span sp = smlens2span(fail);
  bool ok = reportCheck("fail2span", {"span", checkSpanWB(sp), sp.note}, m);
  return ok ? 0 : 1;
}

int demoBoolUnitEquiv(Machine& m) {
  m.set("demo", "bool-unit-equiv");
  CarrierPtr unitC = Carrier::unit();
  CarrierPtr boolC = Carrier::make("Bool", {"F", "T"});
  EffectPtr id = Effect::identity();

  Span sp1 = identitySpan(id, unitC);
  sp1.name = "unitSpan";
  PureLens h;
  h.source = boolC;
  h.view = unitC;
  h.get = [](int) { return 0; };
  h.put = [](int a, int) { return a; };
  h.create = [](int) { return 1; };
  h.name = "collapse";
  PureSpan p2;
  p2.state = boolC;
  p2.left = composePure(h, idLens(unitC));
  p2.right = composePure(h, idLens(unitC));
  Span sp2 = liftPureSpan(id, p2);
  sp2.name = "boolSpan";

  long long budget = budgetFromEnv(kDefaultBudget);
  bool isoFound = runEquiv("iso", sp1.name, sp2.name, sp1, sp2, budget, m);
  bool spanFound = runEquiv("span", sp1.name, sp2.name, sp1, sp2, budget, m);
  if (!spanFound) return 1;

  auto w = searchSpanEquivalence(sp1, sp2, budget);
  LawReport wrep = verifyEquivalence(sp1, sp2, *w);
  std::cout << "span witness verifies: " << wrep.describe() << "\n";
  m.set("span.verify", wrep.pass() ? "pass" : "fail");

  BisimWitness bw = bisimFromSpanWitness(sp1, sp2, *w);
  LawReport brep = verifyEquivalence(sp1, sp2, bw);
  std::cout << "bisimulation from span witness: relation has "
            << bw.relation->size() << " pairs, verification "
            << brep.describe() << "\n";
  m.set("bisim.relation-size",
        static_cast<long long>(bw.relation->size()));
  m.set("bisim.verify", brep.pass() ? "pass" : "fail");

  // the two-state fixture admits no bijection, so iso staying unfound is the
  // expected outcome, not a failure
  return (!isoFound && wrep.pass() && brep.pass()) ? 0 : 1;
}

int demoNaiveSearch(Machine& m) {
  m.set("demo", "naive-compose-search");
  CarrierPtr boolC = Carrier::make("Bool", {"F", "T"});
  long long budget = budgetFromEnv(60'000'000);
  NaiveSearchResult r =
      searchNaiveCounterexample(Effect::state(boolC), 1, 2, budget);
  if (!r.found) {
    std::cout << "no counterexample up to the requested bounds\n";
    m.set("found", "0");
    return 0;
  }
  std::cout << "counterexample shape: |A|=" << r.sizeA << " |B|=" << r.sizeB
            << " |C|=" << r.sizeC << "\n";
  std::cout << "lawful lenses at this shape: " << r.lawfulLeft << " x "
            << r.lawfulRight << ", pairs composed: " << r.pairsTried << "\n";
  std::cout << "left lens:  " << r.leftText << "\n";
  std::cout << "right lens: " << r.rightText << "\n";
  std::cout << "composite violates: " << r.violation.describe() << "\n";
  LawReport again = checkNaiveLaws(composeNaive(r.left, r.right));
  std::cout << "re-verified: "
            << (again.hasLaw(r.violation.law) ? "yes" : "NO") << "\n";
  m.set("found", "1");
  m.set("sizeA", r.sizeA);
  m.set("sizeB", r.sizeB);
  m.set("sizeC", r.sizeC);
  m.set("lawful-left", r.lawfulLeft);
  m.set("lawful-right", r.lawfulRight);
  m.set("pairs-tried", r.pairsTried);
  m.set("law", r.violation.law);
  m.set("reverified", again.hasLaw(r.violation.law) ? "1" : "0");
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"law checking, composition and equivalence for finite lenses"};
  app.require_subcommand(1);

  std::string file, name, kind, left, right, op, aName, bName, witness, which;
  bool withCheck = false;
  bool search = false;

  auto* cCheck = app.add_subcommand(
      "check", "run law suites for named definitions or in-file directives");
  cCheck->add_option("file", file, "lens file")->required();
  cCheck->add_option("--name", name, "check a single definition");

  auto* cCompose =
      app.add_subcommand("compose", "compose two definitions of one kind");
  cCompose->add_option("file", file, "lens file")->required();
  cCompose->add_option("--kind", kind, "pure|mlens|slens|smlens|span")
      ->required()
      ->check(CLI::IsMember({"pure", "mlens", "slens", "smlens", "span"}));
  cCompose->add_option("--left", left, "first (outer) name")->required();
  cCompose->add_option("--right", right, "second (inner) name")->required();
  cCompose->add_flag("--check", withCheck, "run the law suite on the result");

  auto* cConvert = app.add_subcommand("convert", "convert spans and smlenses");
  cConvert->add_option("file", file, "lens file")->required();
  cConvert->add_option("--op", op, "span2smlens|smlens2span")
      ->required()
      ->check(CLI::IsMember({"span2smlens", "smlens2span"}));
  cConvert->add_option("--name", name, "definition to convert")->required();

  auto* cEquiv = app.add_subcommand("equiv", "verify or search an equivalence");
  cEquiv->add_option("file", file, "lens file")->required();
  cEquiv->add_option("--kind", kind, "iso|span|bisim")
      ->required()
      ->check(CLI::IsMember({"iso", "span", "bisim"}));
  cEquiv->add_option("--a", aName, "first span")->required();
  cEquiv->add_option("--b", bName, "second span")->required();
  cEquiv->add_option("--witness", witness,
                     "verify this pure-lens witness instead of searching");
  cEquiv->add_flag("--search", search, "search for a witness (default)");

  auto* cDemo = app.add_subcommand("demo", "run a built-in counterexample");
  cDemo->add_option("which", which, "demo name")
      ->required()
      ->check(CLI::IsMember({"setbool-compose", "fail-span", "bool-unit-equiv",
                             "naive-compose-search"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  Machine m;
  int code = 0;
  try {
    if (cCheck->parsed()) {
      code = cmdCheck(file, name, m);
    } else if (cCompose->parsed()) {
      code = cmdCompose(file, kind, left, right, withCheck, m);
    } else if (cConvert->parsed()) {
      code = cmdConvert(file, op, name, m);
    } else if (cEquiv->parsed()) {
      if (!witness.empty() && search)
        throw UsageError("--witness and --search are mutually exclusive");
      code = cmdEquiv(file, kind, aName, bName, witness, m);
    } else if (cDemo->parsed()) {
      if (which == "setbool-compose") code = demoSetboolCompose(m);
      else if (which == "fail-span") code = demoFailSpan(m);
      else if (which == "bool-unit-equiv") code = demoBoolUnitEquiv(m);
      else code = demoNaiveSearch(m);
    }
  } catch (const ParseError& e) {
    std::cerr << file << ": " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  m.print(std::cout, code);
  return code;
}
