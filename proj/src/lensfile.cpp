#include "bxlens/lensfile.hpp"

#include <cctype>
#include <map>
#include <sstream>

namespace bxlens {

namespace {

enum class Tok {
  Ident,
  LBrace,
  RBrace,
  LParen,
  RParen,
  LBrack,
  RBrack,
  Semi,
  Colon,
  Comma,
  Equals,
  Arrow,    // ->
  ToView,   // ~>
  Between,  // <~>
  End
};

struct Token {
  Tok kind;
  std::string text;
  int line;
  int col;
};

bool identChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' ||
         c == '\'';
}

std::vector<Token> lex(const std::string& text) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto push = [&](Tok k, std::string t) {
    out.push_back({k, std::move(t), line, col});
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++col;
      ++i;
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
      push(Tok::Arrow, "->");
      i += 2;
      col += 2;
      continue;
    }
    if (c == '~' && i + 1 < text.size() && text[i + 1] == '>') {
      push(Tok::ToView, "~>");
      i += 2;
      col += 2;
      continue;
    }
    if (c == '<' && i + 2 < text.size() && text[i + 1] == '~' &&
        text[i + 2] == '>') {
      push(Tok::Between, "<~>");
      i += 3;
      col += 3;
      continue;
    }
    switch (c) {
      case '{': push(Tok::LBrace, "{"); ++i; ++col; continue;
      case '}': push(Tok::RBrace, "}"); ++i; ++col; continue;
      case '(': push(Tok::LParen, "("); ++i; ++col; continue;
      case ')': push(Tok::RParen, ")"); ++i; ++col; continue;
      case '[': push(Tok::LBrack, "["); ++i; ++col; continue;
      case ']': push(Tok::RBrack, "]"); ++i; ++col; continue;
      case ';': push(Tok::Semi, ";"); ++i; ++col; continue;
      case ':': push(Tok::Colon, ":"); ++i; ++col; continue;
      case ',': push(Tok::Comma, ","); ++i; ++col; continue;
      case '=': push(Tok::Equals, "="); ++i; ++col; continue;
      default: break;
    }
    if (identChar(c)) {
      size_t j = i;
      while (j < text.size() && identChar(text[j])) {
        if (text[j] == '-' && j + 1 < text.size() && text[j + 1] == '>') break;
        ++j;
      }
      push(Tok::Ident, text.substr(i, j - i));
      col += static_cast<int>(j - i);
      i = j;
      continue;
    }
    throw ParseError(line, col, std::string("unexpected character '") + c + "'");
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

std::string tokName(Tok k) {
  switch (k) {
    case Tok::Ident: return "name";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBrack: return "'['";
    case Tok::RBrack: return "']'";
    case Tok::Semi: return "';'";
    case Tok::Colon: return "':'";
    case Tok::Comma: return "','";
    case Tok::Equals: return "'='";
    case Tok::Arrow: return "'->'";
    case Tok::ToView: return "'~>'";
    case Tok::Between: return "'<~>'";
    case Tok::End: return "end of input";
  }
  return "?";
}

/// Declared names and the carrier/effect shape needed to validate later
/// references, covering both table definitions and compose-directive results.
struct RegEntry {
  StmtKind kind;
  std::string a, b;       // lens: source/view; slens: left/right; span: views
  std::string effectSig;  // "pure" or the effect description
};

class Parser {
 public:
  explicit Parser(const std::string& text) : toks_(lex(text)) {}

  LensFile run() {
    while (!at(Tok::End)) statement();
    return std::move(out_);
  }

 private:
  std::vector<Token> toks_;
  size_t pos_ = 0;
  LensFile out_;
  std::map<std::string, CarrierPtr> carriers_;
  std::map<std::string, RegEntry> names_;
  EffectPtr ambient_;

  const Token& tok() const { return toks_[pos_]; }
  bool at(Tok k) const { return tok().kind == k; }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(tok().line, tok().col, msg);
  }
  [[noreturn]] void failAt(const Token& t, const std::string& msg) const {
    throw ParseError(t.line, t.col, msg);
  }
  Token eat(Tok k) {
    if (!at(k)) fail("expected " + tokName(k) + ", found " + tokName(tok().kind));
    return toks_[pos_++];
  }
  bool accept(Tok k) {
    if (!at(k)) return false;
    ++pos_;
    return true;
  }
  std::string ident(const std::string& what) {
    if (!at(Tok::Ident)) fail("expected " + what);
    return toks_[pos_++].text;
  }

  CarrierPtr carrier(const std::string& n, const Token& t) {
    auto it = carriers_.find(n);
    if (it == carriers_.end()) failAt(t, "unknown carrier '" + n + "'");
    return it->second;
  }

  void declare(const std::string& n, RegEntry e, const Token& t) {
    if (names_.count(n)) failAt(t, "name '" + n + "' is already defined");
    names_.emplace(n, std::move(e));
  }

  const RegEntry& lookup(const std::string& n, const Token& t) {
    auto it = names_.find(n);
    if (it == names_.end()) failAt(t, "unknown name '" + n + "'");
    return it->second;
  }

  // An element reference: a bare name or a parenthesized tuple, assembled
  // into the canonical rendering used by product carriers.
  std::string elementText() {
    if (at(Tok::Ident)) return toks_[pos_++].text;
    if (accept(Tok::LParen)) {
      if (accept(Tok::RParen)) return "()";
      std::string s = "(" + elementText();
      while (accept(Tok::Comma)) s += "," + elementText();
      eat(Tok::RParen);
      return s + ")";
    }
    fail("expected an element");
  }

  int element(const Carrier& c) {
    Token t = tok();
    std::string e = elementText();
    int i = c.find(e);
    if (i < 0) failAt(t, "element '" + e + "' is not in carrier " + c.name());
    return i;
  }

  EffectValue literal(const Effect& e, const Carrier& value) {
    EffectValue m;
    switch (e.kind()) {
      case EffectKind::Identity:
        return ret(e, element(value));
      case EffectKind::Maybe: {
        if (!at(Tok::Ident)) fail("expected 'just' or 'nothing'");
        if (tok().text == "nothing") {
          ++pos_;
          return m;
        }
        if (tok().text == "just") {
          ++pos_;
          m.has = true;
          m.v = element(value);
          return m;
        }
        fail("expected 'just' or 'nothing'");
      }
      case EffectKind::List: {
        eat(Tok::LBrack);
        while (!at(Tok::RBrack)) m.items.push_back(element(value));
        eat(Tok::RBrack);
        return m;
      }
      case EffectKind::Writer: {
        eat(Tok::LParen);
        eat(Tok::LBrack);
        const Carrier& logC = *e.monoid().carrier();
        while (!at(Tok::RBrack)) m.log.w.push_back(element(logC));
        eat(Tok::RBrack);
        eat(Tok::Semi);
        m.v = element(value);
        eat(Tok::RParen);
        return m;
      }
      case EffectKind::State: {
        const Carrier& dom = *e.stateDom();
        m.table.assign(dom.size(), {-1, -1});
        std::vector<bool> seen(dom.size(), false);
        eat(Tok::LBrace);
        while (!at(Tok::RBrace)) {
          Token rowTok = tok();
          int s = element(dom);
          if (seen[s]) failAt(rowTok, "duplicate state row for " + dom.elem(s));
          seen[s] = true;
          eat(Tok::Arrow);
          eat(Tok::LParen);
          int x = element(value);
          eat(Tok::Comma);
          int sn = element(dom);
          eat(Tok::RParen);
          m.table[s] = {x, sn};
          if (!accept(Tok::Semi)) break;
        }
        Token close = eat(Tok::RBrace);
        for (int s = 0; s < dom.size(); ++s)
          if (!seen[s])
            failAt(close, "state literal missing row for " + dom.elem(s));
        return m;
      }
    }
    fail("unsupported effect");
  }

  void statement() {
    Token t = tok();
    std::string kw = ident("a statement keyword");
    if (kw == "carrier") return carrierDecl();
    if (kw == "effect") return effectDecl();
    if (kw == "pure-lens") return pureLensDef();
    if (kw == "mlens") return mlensDef(t);
    if (kw == "slens") return slensDef(false, t);
    if (kw == "smlens") return slensDef(true, t);
    if (kw == "span") return spanDef(t);
    if (kw == "check") return checkDirective();
    if (kw == "compose") return composeDirective();
    if (kw == "equiv") return equivDirective();
    failAt(t, "unknown statement '" + kw + "'");
  }

  void carrierDecl() {
    Token nameTok = tok();
    std::string name = ident("a carrier name");
    if (carriers_.count(name))
      failAt(nameTok, "carrier '" + name + "' is already defined");
    eat(Tok::LBrace);
    std::vector<std::string> elems;
    while (at(Tok::Ident)) {
      std::string e = toks_[pos_++].text;
      for (const auto& prev : elems)
        if (prev == e) fail("duplicate element '" + e + "'");
      elems.push_back(e);
    }
    eat(Tok::RBrace);
    CarrierPtr c = Carrier::make(name, elems);
    carriers_.emplace(name, c);
    out_.order.push_back({StmtKind::CarrierS,
                          static_cast<int>(out_.carriers.size())});
    out_.carriers.push_back({name, c});
  }

  void effectDecl() {
    Token t = tok();
    std::string kind = ident("an effect kind");
    EffectDecl d;
    if (kind == "identity") {
      d.effect = Effect::identity();
    } else if (kind == "maybe") {
      d.effect = Effect::maybe();
    } else if (kind == "list") {
      d.effect = Effect::list();
    } else if (kind == "state") {
      Token ct = tok();
      d.stateCarrier = ident("a state carrier name");
      d.effect = Effect::state(carrier(d.stateCarrier, ct));
    } else if (kind == "writer") {
      Token lt = tok();
      if (ident("'list'") != "list")
        failAt(lt, "writer effects take the form 'writer list CARRIER'");
      Token ct = tok();
      d.writerCarrier = ident("a log carrier name");
      d.effect = Effect::writer(Monoid::freeList(carrier(d.writerCarrier, ct)));
    } else {
      failAt(t, "unknown effect '" + kind + "'");
    }
    ambient_ = d.effect;
    out_.order.push_back({StmtKind::EffectS,
                          static_cast<int>(out_.effects.size())});
    out_.effects.push_back(std::move(d));
  }

  // get { a -> b; ... } rows, total over dom.
  std::vector<int> getTable(const Carrier& dom, const Carrier& cod) {
    eat(Tok::LBrace);
    std::vector<int> table(dom.size(), -1);
    while (!at(Tok::RBrace)) {
      Token rowTok = tok();
      int a = element(dom);
      if (table[a] >= 0)
        failAt(rowTok, "duplicate get row for " + dom.elem(a));
      eat(Tok::Arrow);
      table[a] = element(cod);
      if (!accept(Tok::Semi)) break;
    }
    Token close = eat(Tok::RBrace);
    for (int a = 0; a < dom.size(); ++a)
      if (table[a] < 0)
        failAt(close, "get table missing row for " + dom.elem(a));
    return table;
  }

  // create { b -> RHS; ... } with an arbitrary row parser, total over dom.
  template <typename T, typename ParseRhs>
  std::vector<T> keyedTable(const Carrier& dom, const std::string& section,
                            ParseRhs parseRhs) {
    eat(Tok::LBrace);
    std::vector<std::optional<T>> table(dom.size());
    while (!at(Tok::RBrace)) {
      Token rowTok = tok();
      int k = element(dom);
      if (table[k])
        failAt(rowTok, "duplicate " + section + " row for " + dom.elem(k));
      eat(Tok::Arrow);
      table[k] = parseRhs();
      if (!accept(Tok::Semi)) break;
    }
    Token close = eat(Tok::RBrace);
    std::vector<T> out;
    for (int k = 0; k < dom.size(); ++k) {
      if (!table[k])
        failAt(close,
               section + " table missing row for " + dom.elem(k));
      out.push_back(std::move(*table[k]));
    }
    return out;
  }

  // put { a b -> RHS; ... } keyed by two elements, total over dom1 x dom2.
  template <typename T, typename ParseRhs>
  std::vector<T> pairedTable(const Carrier& dom1, const Carrier& dom2,
                             const std::string& section, ParseRhs parseRhs) {
    eat(Tok::LBrace);
    const int n2 = dom2.size();
    std::vector<std::optional<T>> table(
        static_cast<size_t>(dom1.size()) * n2);
    while (!at(Tok::RBrace)) {
      Token rowTok = tok();
      int k1 = element(dom1);
      int k2 = element(dom2);
      if (table[k1 * n2 + k2])
        failAt(rowTok, "duplicate " + section + " row for (" + dom1.elem(k1) +
                           ", " + dom2.elem(k2) + ")");
      eat(Tok::Arrow);
      table[k1 * n2 + k2] = parseRhs();
      if (!accept(Tok::Semi)) break;
    }
    Token close = eat(Tok::RBrace);
    std::vector<T> out;
    for (int k1 = 0; k1 < dom1.size(); ++k1)
      for (int k2 = 0; k2 < n2; ++k2) {
        if (!table[k1 * n2 + k2])
          failAt(close, section + " table missing row for (" + dom1.elem(k1) +
                            ", " + dom2.elem(k2) + ")");
        out.push_back(std::move(*table[k1 * n2 + k2]));
      }
    return out;
  }

  void pureLensDef() {
    Token nameTok = tok();
    PureLensDef def;
    def.name = ident("a lens name");
    eat(Tok::Colon);
    Token st = tok();
    def.source = ident("a carrier name");
    eat(Tok::ToView);
    Token vt = tok();
    def.view = ident("a carrier name");
    CarrierPtr A = carrier(def.source, st);
    CarrierPtr B = carrier(def.view, vt);
    eat(Tok::LBrace);
    bool sawGet = false, sawPut = false;
    while (!at(Tok::RBrace)) {
      Token secTok = tok();
      std::string sec = ident("a section (get, put or create)");
      if (sec == "get") {
        if (sawGet) failAt(secTok, "duplicate get section");
        sawGet = true;
        def.get = getTable(*A, *B);
      } else if (sec == "put") {
        if (sawPut) failAt(secTok, "duplicate put section");
        sawPut = true;
        def.put = pairedTable<int>(*A, *B, "put",
                                   [&] { return element(*A); });
      } else if (sec == "create") {
        if (def.create) failAt(secTok, "duplicate create section");
        def.create = keyedTable<int>(*B, "create", [&] { return element(*A); });
      } else {
        failAt(secTok, "unknown section '" + sec + "'");
      }
    }
    Token close = eat(Tok::RBrace);
    if (!sawGet) failAt(close, "pure-lens block missing its get section");
    if (!sawPut) failAt(close, "pure-lens block missing its put section");

    def.lens.source = A;
    def.lens.view = B;
    def.lens.name = def.name;
    def.lens.get = [g = def.get](int a) { return g.at(a); };
    def.lens.put = [p = def.put, n = B->size()](int a, int b) {
      return p.at(a * n + b);
    };
    if (def.create)
      def.lens.create = [c = *def.create](int b) { return c.at(b); };
    declare(def.name, {StmtKind::PureS, def.source, def.view, "pure"}, nameTok);
    out_.order.push_back({StmtKind::PureS, static_cast<int>(out_.pures.size())});
    out_.pures.push_back(std::move(def));
  }

  void mlensDef(const Token& kwTok) {
    if (!ambient_)
      failAt(kwTok, "mlens blocks need an effect declaration first");
    Token nameTok = tok();
    MLensDef def;
    def.effect = ambient_;
    def.name = ident("a lens name");
    eat(Tok::Colon);
    Token st = tok();
    def.source = ident("a carrier name");
    eat(Tok::ToView);
    Token vt = tok();
    def.view = ident("a carrier name");
    CarrierPtr A = carrier(def.source, st);
    CarrierPtr B = carrier(def.view, vt);
    eat(Tok::LBrace);
    bool sawGet = false, sawPut = false;
    while (!at(Tok::RBrace)) {
      Token secTok = tok();
      std::string sec = ident("a section (get, put or create)");
      if (sec == "get") {
        if (sawGet) failAt(secTok, "duplicate get section");
        sawGet = true;
        def.get = getTable(*A, *B);
      } else if (sec == "put") {
        if (sawPut) failAt(secTok, "duplicate put section");
        sawPut = true;
        def.put = pairedTable<EffectValue>(
            *A, *B, "put", [&] { return literal(*def.effect, *A); });
      } else if (sec == "create") {
        if (def.create) failAt(secTok, "duplicate create section");
        def.create = keyedTable<EffectValue>(
            *B, "create", [&] { return literal(*def.effect, *A); });
      } else {
        failAt(secTok, "unknown section '" + sec + "'");
      }
    }
    Token close = eat(Tok::RBrace);
    if (!sawGet) failAt(close, "mlens block missing its get section");
    if (!sawPut) failAt(close, "mlens block missing its put section");

    def.lens.effect = def.effect;
    def.lens.source = A;
    def.lens.view = B;
    def.lens.name = def.name;
    def.lens.mget = [g = def.get](int a) { return g.at(a); };
    def.lens.mput = [p = def.put, n = B->size()](int a, int b) {
      return p.at(a * n + b);
    };
    if (def.create)
      def.lens.mcreate = [c = *def.create](int b) { return c.at(b); };
    declare(def.name,
            {StmtKind::MS, def.source, def.view, def.effect->describe()},
            nameTok);
    out_.order.push_back({StmtKind::MS, static_cast<int>(out_.mlenses.size())});
    out_.mlenses.push_back(std::move(def));
  }

  // slens / smlens share the surface shape; smlens rows carry effect
  // literals over the encoded pair carriers.
  void slensDef(bool monadic, const Token& kwTok) {
    if (monadic && !ambient_)
      failAt(kwTok, "smlens blocks need an effect declaration first");
    Token nameTok = tok();
    std::string name = ident("a lens name");
    eat(Tok::Colon);
    Token lt = tok();
    std::string leftN = ident("a carrier name");
    eat(Tok::Between);
    Token rt = tok();
    std::string rightN = ident("a carrier name");
    Token wt = tok();
    if (ident("'with'") != "with")
      failAt(wt, "expected 'with' before the complement carrier");
    Token ct = tok();
    std::string compN = ident("a carrier name");
    CarrierPtr A = carrier(leftN, lt);
    CarrierPtr B = carrier(rightN, rt);
    CarrierPtr C = carrier(compN, ct);
    CarrierPtr rightPair = Carrier::product(B, C);
    CarrierPtr leftPair = Carrier::product(A, C);

    std::optional<int> missing;
    std::optional<std::vector<std::pair<int, int>>> putR, putL;
    std::optional<std::vector<EffectValue>> mputR, mputL;
    auto pairRhs = [&](const Carrier& val) {
      eat(Tok::LParen);
      int x = element(val);
      eat(Tok::Comma);
      int c = element(*C);
      eat(Tok::RParen);
      return std::make_pair(x, c);
    };

    eat(Tok::LBrace);
    while (!at(Tok::RBrace)) {
      Token secTok = tok();
      std::string sec = ident("a section (missing, putR or putL)");
      if (sec == "missing") {
        if (missing) failAt(secTok, "duplicate missing declaration");
        missing = element(*C);
      } else if (sec == "putR") {
        if (putR || mputR) failAt(secTok, "duplicate putR section");
        if (monadic)
          mputR = pairedTable<EffectValue>(
              *A, *C, "putR", [&] { return literal(*ambient_, *rightPair); });
        else
          putR = pairedTable<std::pair<int, int>>(
              *A, *C, "putR", [&] { return pairRhs(*B); });
      } else if (sec == "putL") {
        if (putL || mputL) failAt(secTok, "duplicate putL section");
        if (monadic)
          mputL = pairedTable<EffectValue>(
              *B, *C, "putL", [&] { return literal(*ambient_, *leftPair); });
        else
          putL = pairedTable<std::pair<int, int>>(
              *B, *C, "putL", [&] { return pairRhs(*A); });
      } else {
        failAt(secTok, "unknown section '" + sec + "'");
      }
    }
    Token close = eat(Tok::RBrace);
    if (!missing) failAt(close, "block missing its missing declaration");
    if (monadic ? !mputR : !putR) failAt(close, "block missing its putR section");
    if (monadic ? !mputL : !putL) failAt(close, "block missing its putL section");

    if (monadic) {
      SMLensDef def;
      def.name = name;
      def.left = leftN;
      def.right = rightN;
      def.complement = compN;
      def.effect = ambient_;
      def.missing = *missing;
      def.putR = std::move(*mputR);
      def.putL = std::move(*mputL);
      def.lens.effect = def.effect;
      def.lens.left = A;
      def.lens.right = B;
      def.lens.complement = C;
      def.lens.missing = def.missing;
      def.lens.name = def.name;
      def.lens.mputR = [t = def.putR, n = C->size()](int a, int c) {
        return t.at(a * n + c);
      };
      def.lens.mputL = [t = def.putL, n = C->size()](int b, int c) {
        return t.at(b * n + c);
      };
      declare(name, {StmtKind::SMS, leftN, rightN, def.effect->describe()},
              nameTok);
      out_.order.push_back(
          {StmtKind::SMS, static_cast<int>(out_.smlenses.size())});
      out_.smlenses.push_back(std::move(def));
    } else {
      SLensDef def;
      def.name = name;
      def.left = leftN;
      def.right = rightN;
      def.complement = compN;
      def.missing = *missing;
      def.putR = std::move(*putR);
      def.putL = std::move(*putL);
      def.lens.left = A;
      def.lens.right = B;
      def.lens.complement = C;
      def.lens.missing = def.missing;
      def.lens.name = def.name;
      def.lens.putR = [t = def.putR, n = C->size()](int a, int c) {
        return t.at(a * n + c);
      };
      def.lens.putL = [t = def.putL, n = C->size()](int b, int c) {
        return t.at(b * n + c);
      };
      declare(name, {StmtKind::SS, leftN, rightN, "pure"}, nameTok);
      out_.order.push_back(
          {StmtKind::SS, static_cast<int>(out_.slenses.size())});
      out_.slenses.push_back(std::move(def));
    }
  }

  void spanDef(const Token&) {
    Token nameTok = tok();
    SpanDef def;
    def.name = ident("a span name");
    eat(Tok::Equals);
    eat(Tok::LParen);
    Token ltk = tok();
    def.left = ident("an mlens name");
    eat(Tok::Comma);
    Token rtk = tok();
    def.right = ident("an mlens name");
    eat(Tok::RParen);

    const MLensDef* L = out_.findMLens(def.left);
    const MLensDef* R = out_.findMLens(def.right);
    if (!L) failAt(ltk, "span legs must be table-defined mlenses: '" +
                            def.left + "'");
    if (!R) failAt(rtk, "span legs must be table-defined mlenses: '" +
                            def.right + "'");
    if (L->source != R->source)
      failAt(rtk, "span legs must share their source carrier (" + L->source +
                      " vs " + R->source + ")");
    if (!L->effect->same(*R->effect))
      failAt(rtk, "span legs must share their effect");
    def.span.state = L->lens.source;
    def.span.left = L->lens;
    def.span.right = R->lens;
    def.span.name = def.name;
    declare(def.name, {StmtKind::SpanS, L->view, R->view, L->effect->describe()},
            nameTok);
    out_.order.push_back({StmtKind::SpanS, static_cast<int>(out_.spans.size())});
    out_.spans.push_back(std::move(def));
  }

  void pushDirective(Directive d) {
    out_.order.push_back(
        {StmtKind::DirectiveS, static_cast<int>(out_.directives.size())});
    out_.directives.push_back(std::move(d));
  }

  void checkDirective() {
    Token nt = tok();
    Directive d;
    d.kind = DirectiveKind::Check;
    d.names.push_back(ident("a defined name"));
    lookup(d.names[0], nt);
    pushDirective(std::move(d));
  }

  void composeDirective() {
    Directive d;
    d.kind = DirectiveKind::Compose;
    Token kt = tok();
    d.objKind = ident("a kind (pure, mlens, slens, smlens or span)");
    StmtKind want;
    if (d.objKind == "pure") want = StmtKind::PureS;
    else if (d.objKind == "mlens") want = StmtKind::MS;
    else if (d.objKind == "slens") want = StmtKind::SS;
    else if (d.objKind == "smlens") want = StmtKind::SMS;
    else if (d.objKind == "span") want = StmtKind::SpanS;
    else failAt(kt, "unknown compose kind '" + d.objKind + "'");
    Token nt = tok();
    std::string newName = ident("a new name");
    eat(Tok::Equals);
    Token xt = tok();
    std::string x = ident("a defined name");
    Token yt = tok();
    std::string y = ident("a defined name");
    const RegEntry& ex = lookup(x, xt);
    const RegEntry& ey = lookup(y, yt);
    if (ex.kind != want) failAt(xt, "'" + x + "' is not a " + d.objKind);
    if (ey.kind != want) failAt(yt, "'" + y + "' is not a " + d.objKind);
    if (ex.b != ey.a)
      failAt(yt, "carriers do not line up: '" + x + "' ends at " + ex.b +
                     " but '" + y + "' starts at " + ey.a);
    if (ex.effectSig != ey.effectSig)
      failAt(yt, "'" + x + "' and '" + y + "' use different effects");
    declare(newName, {want, ex.a, ey.b, ex.effectSig}, nt);
    d.names = {newName, x, y};
    pushDirective(std::move(d));
  }

  void equivDirective() {
    Directive d;
    d.kind = DirectiveKind::Equiv;
    Token kt = tok();
    d.objKind = ident("a kind (iso, span or bisim)");
    if (d.objKind != "iso" && d.objKind != "span" && d.objKind != "bisim")
      failAt(kt, "unknown equiv kind '" + d.objKind + "'");
    Token xt = tok();
    std::string x = ident("a span name");
    Token yt = tok();
    std::string y = ident("a span name");
    const RegEntry& ex = lookup(x, xt);
    const RegEntry& ey = lookup(y, yt);
    if (ex.kind != StmtKind::SpanS) failAt(xt, "'" + x + "' is not a span");
    if (ey.kind != StmtKind::SpanS) failAt(yt, "'" + y + "' is not a span");
    if (ex.a != ey.a || ex.b != ey.b)
      failAt(yt, "spans must share both view carriers");
    if (ex.effectSig != ey.effectSig)
      failAt(yt, "spans must share their effect");
    d.names = {x, y};
    pushDirective(std::move(d));
  }
};

}  // namespace

const CarrierDecl* LensFile::findCarrier(const std::string& n) const {
  for (const auto& c : carriers)
    if (c.name == n) return &c;
  return nullptr;
}
const PureLensDef* LensFile::findPure(const std::string& n) const {
  for (const auto& d : pures)
    if (d.name == n) return &d;
  return nullptr;
}
const MLensDef* LensFile::findMLens(const std::string& n) const {
  for (const auto& d : mlenses)
    if (d.name == n) return &d;
  return nullptr;
}
const SLensDef* LensFile::findSLens(const std::string& n) const {
  for (const auto& d : slenses)
    if (d.name == n) return &d;
  return nullptr;
}
const SMLensDef* LensFile::findSMLens(const std::string& n) const {
  for (const auto& d : smlenses)
    if (d.name == n) return &d;
  return nullptr;
}
const SpanDef* LensFile::findSpan(const std::string& n) const {
  for (const auto& d : spans)
    if (d.name == n) return &d;
  return nullptr;
}

LensFile parseLensFile(const std::string& text) {
  return Parser(text).run();
}

namespace {

void renderGetTable(std::ostream& os, const Carrier& dom, const Carrier& cod,
                    const std::vector<int>& t) {
  os << "{ ";
  for (int a = 0; a < dom.size(); ++a) {
    if (a) os << "; ";
    os << dom.elem(a) << " -> " << cod.elem(t[a]);
  }
  os << " }";
}

template <typename RenderRhs>
void renderKeyedTable(std::ostream& os, const Carrier& dom, RenderRhs rhs) {
  os << "{ ";
  for (int k = 0; k < dom.size(); ++k) {
    if (k) os << "; ";
    os << dom.elem(k) << " -> ";
    rhs(k);
  }
  os << " }";
}

template <typename RenderRhs>
void renderPairedTable(std::ostream& os, const Carrier& d1, const Carrier& d2,
                       RenderRhs rhs) {
  os << "{ ";
  for (int k1 = 0; k1 < d1.size(); ++k1)
    for (int k2 = 0; k2 < d2.size(); ++k2) {
      if (k1 || k2) os << "; ";
      os << d1.elem(k1) << " " << d2.elem(k2) << " -> ";
      rhs(k1 * d2.size() + k2);
    }
  os << " }";
}

}  // namespace

std::string renderLensFile(const LensFile& f) {
  std::ostringstream os;
  for (auto [kind, idx] : f.order) {
    switch (kind) {
      case StmtKind::CarrierS: {
        const auto& c = f.carriers[idx];
        os << "carrier " << c.name << " {";
        for (int i = 0; i < c.carrier->size(); ++i)
          os << " " << c.carrier->elem(i);
        os << " }\n";
        break;
      }
      case StmtKind::EffectS: {
        const auto& d = f.effects[idx];
        os << "effect ";
        switch (d.effect->kind()) {
          case EffectKind::Identity: os << "identity"; break;
          case EffectKind::Maybe: os << "maybe"; break;
          case EffectKind::List: os << "list"; break;
          case EffectKind::State: os << "state " << d.stateCarrier; break;
          case EffectKind::Writer:
            os << "writer list " << d.writerCarrier;
            break;
        }
        os << "\n";
        break;
      }
      case StmtKind::PureS: {
        const auto& d = f.pures[idx];
        const Carrier& A = *d.lens.source;
        const Carrier& B = *d.lens.view;
        os << "pure-lens " << d.name << " : " << d.source << " ~> " << d.view
           << " {\n  get ";
        renderGetTable(os, A, B, d.get);
        os << "\n  put ";
        renderPairedTable(os, A, B, [&](int i) { os << A.elem(d.put[i]); });
        if (d.create) {
          os << "\n  create ";
          renderKeyedTable(os, B, [&](int b) { os << A.elem((*d.create)[b]); });
        }
        os << "\n}\n";
        break;
      }
      case StmtKind::MS: {
        const auto& d = f.mlenses[idx];
        const Carrier& A = *d.lens.source;
        const Carrier& B = *d.lens.view;
        os << "mlens " << d.name << " : " << d.source << " ~> " << d.view
           << " {\n  get ";
        renderGetTable(os, A, B, d.get);
        os << "\n  put ";
        renderPairedTable(
            os, A, B, [&](int i) { os << renderEffect(*d.effect, A, d.put[i]); });
        if (d.create) {
          os << "\n  create ";
          renderKeyedTable(os, B, [&](int b) {
            os << renderEffect(*d.effect, A, (*d.create)[b]);
          });
        }
        os << "\n}\n";
        break;
      }
      case StmtKind::SS: {
        const auto& d = f.slenses[idx];
        const Carrier& A = *d.lens.left;
        const Carrier& B = *d.lens.right;
        const Carrier& C = *d.lens.complement;
        os << "slens " << d.name << " : " << d.left << " <~> " << d.right
           << " with " << d.complement << " {\n  missing " << C.elem(d.missing)
           << "\n  putR ";
        renderPairedTable(os, A, C, [&](int i) {
          os << "(" << B.elem(d.putR[i].first) << ", "
             << C.elem(d.putR[i].second) << ")";
        });
        os << "\n  putL ";
        renderPairedTable(os, B, C, [&](int i) {
          os << "(" << A.elem(d.putL[i].first) << ", "
             << C.elem(d.putL[i].second) << ")";
        });
        os << "\n}\n";
        break;
      }
      case StmtKind::SMS: {
        const auto& d = f.smlenses[idx];
        const Carrier& A = *d.lens.left;
        const Carrier& B = *d.lens.right;
        const Carrier& C = *d.lens.complement;
        CarrierPtr rightPair = Carrier::product(d.lens.right, d.lens.complement);
        CarrierPtr leftPair = Carrier::product(d.lens.left, d.lens.complement);
        os << "smlens " << d.name << " : " << d.left << " <~> " << d.right
           << " with " << d.complement << " {\n  missing " << C.elem(d.missing)
           << "\n  putR ";
        renderPairedTable(os, A, C, [&](int i) {
          os << renderEffect(*d.effect, *rightPair, d.putR[i]);
        });
        os << "\n  putL ";
        renderPairedTable(os, B, C, [&](int i) {
          os << renderEffect(*d.effect, *leftPair, d.putL[i]);
        });
        os << "\n}\n";
        break;
      }
      case StmtKind::SpanS: {
        const auto& d = f.spans[idx];
        os << "span " << d.name << " = (" << d.left << ", " << d.right << ")\n";
        break;
      }
      case StmtKind::DirectiveS: {
        const auto& d = f.directives[idx];
        switch (d.kind) {
          case DirectiveKind::Check:
            os << "check " << d.names[0] << "\n";
            break;
          case DirectiveKind::Compose:
            os << "compose " << d.objKind << " " << d.names[0] << " = "
               << d.names[1] << " " << d.names[2] << "\n";
            break;
          case DirectiveKind::Equiv:
            os << "equiv " << d.objKind << " " << d.names[0] << " "
               << d.names[1] << "\n";
            break;
        }
        break;
      }
    }
  }
  return os.str();
}

namespace {

bool sameCarrierDecl(const CarrierDecl& a, const CarrierDecl& b) {
  return a.name == b.name && carrierEq(a.carrier, b.carrier);
}

bool sameEffectDecl(const EffectDecl& a, const EffectDecl& b) {
  return a.effect->same(*b.effect) && a.stateCarrier == b.stateCarrier &&
         a.writerCarrier == b.writerCarrier;
}

template <typename T>
bool sameOpt(const std::optional<T>& a, const std::optional<T>& b) {
  if (a.has_value() != b.has_value()) return false;
  return !a || *a == *b;
}

}  // namespace

bool lensFileEq(const LensFile& a, const LensFile& b) {
  if (a.order != b.order) return false;
  if (a.carriers.size() != b.carriers.size()) return false;
  for (size_t i = 0; i < a.carriers.size(); ++i)
    if (!sameCarrierDecl(a.carriers[i], b.carriers[i])) return false;
  if (a.effects.size() != b.effects.size()) return false;
  for (size_t i = 0; i < a.effects.size(); ++i)
    if (!sameEffectDecl(a.effects[i], b.effects[i])) return false;
  if (a.pures.size() != b.pures.size()) return false;
  for (size_t i = 0; i < a.pures.size(); ++i) {
    const auto& x = a.pures[i];
    const auto& y = b.pures[i];
    if (x.name != y.name || x.source != y.source || x.view != y.view ||
        x.get != y.get || x.put != y.put || !sameOpt(x.create, y.create))
      return false;
  }
  if (a.mlenses.size() != b.mlenses.size()) return false;
  for (size_t i = 0; i < a.mlenses.size(); ++i) {
    const auto& x = a.mlenses[i];
    const auto& y = b.mlenses[i];
    if (x.name != y.name || x.source != y.source || x.view != y.view ||
        !x.effect->same(*y.effect) || x.get != y.get || x.put != y.put ||
        !sameOpt(x.create, y.create))
      return false;
  }
  if (a.slenses.size() != b.slenses.size()) return false;
  for (size_t i = 0; i < a.slenses.size(); ++i) {
    const auto& x = a.slenses[i];
    const auto& y = b.slenses[i];
    if (x.name != y.name || x.left != y.left || x.right != y.right ||
        x.complement != y.complement || x.missing != y.missing ||
        x.putR != y.putR || x.putL != y.putL)
      return false;
  }
  if (a.smlenses.size() != b.smlenses.size()) return false;
  for (size_t i = 0; i < a.smlenses.size(); ++i) {
    const auto& x = a.smlenses[i];
    const auto& y = b.smlenses[i];
    if (x.name != y.name || x.left != y.left || x.right != y.right ||
        x.complement != y.complement || !x.effect->same(*y.effect) ||
        x.missing != y.missing || x.putR != y.putR || x.putL != y.putL)
      return false;
  }
  if (a.spans.size() != b.spans.size()) return false;
  for (size_t i = 0; i < a.spans.size(); ++i) {
    const auto& x = a.spans[i];
    const auto& y = b.spans[i];
    if (x.name != y.name || x.left != y.left || x.right != y.right)
      return false;
  }
  if (a.directives.size() != b.directives.size()) return false;
  for (size_t i = 0; i < a.directives.size(); ++i) {
    const auto& x = a.directives[i];
    const auto& y = b.directives[i];
    if (x.kind != y.kind || x.objKind != y.objKind || x.names != y.names)
      return false;
  }
  return true;
}

}  // namespace bxlens
