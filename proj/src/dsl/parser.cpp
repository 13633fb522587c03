// SPDX-License-Identifier: Apache-2.0
#include <cctype>
#include <string_view>

#include "chowkit/scene.hpp"

namespace chowkit::scene {

namespace {

enum class Tok { Ident, Int, String, Punct, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  Location loc;
};

std::vector<Token> lex(const std::string& src, const std::string& file) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto here = [&] { return Location{file, line, col}; };
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    const unsigned char c = static_cast<unsigned char>(src[i]);
    if (c >= 0x80) throw ParseError(here(), "non-ASCII character; write generator names with ASCII aliases");
    if (std::isspace(c)) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    const Location loc = here();
    if (std::isalpha(c) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      out.push_back({Tok::Ident, src.substr(i, j - i), loc});
      advance(j - i);
      continue;
    }
    if (std::isdigit(c)) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      if (j < src.size() && src[j] == '.') throw ParseError(here(), "decimal literals are not supported; write 1/2");
      out.push_back({Tok::Int, src.substr(i, j - i), loc});
      advance(j - i);
      continue;
    }
    if (c == '"') {
      std::size_t j = i + 1;
      std::string text;
      while (j < src.size() && src[j] != '"' && src[j] != '\n') {
        if (static_cast<unsigned char>(src[j]) >= 0x80) {
          throw ParseError(loc, "non-ASCII character in string");
        }
        text += src[j++];
      }
      if (j >= src.size() || src[j] != '"') throw ParseError(loc, "unterminated string");
      out.push_back({Tok::String, text, loc});
      advance(j + 1 - i);
      continue;
    }
    static constexpr std::string_view two[] = {"==", "=>", "->"};
    bool matched = false;
    for (auto p : two) {
      if (src.compare(i, 2, p) == 0) {
        out.push_back({Tok::Punct, std::string(p), loc});
        advance(2);
        matched = true;
        break;
      }
    }
    if (matched) continue;
    if (std::string_view("{}():;,+-*/^=").find(static_cast<char>(c)) != std::string_view::npos) {
      out.push_back({Tok::Punct, std::string(1, static_cast<char>(c)), loc});
      advance(1);
      continue;
    }
    throw ParseError(loc, std::string("unexpected character '") + static_cast<char>(c) + "'");
  }
  out.push_back({Tok::End, "", here()});
  return out;
}

const char* const kItemKeywords[] = {"ring",     "class",       "quotient",  "adjoin", "pbundle",
                                     "blowup",   "fiberprod",   "pullback",  "pushforward",
                                     "fibration", "taut",       "assert"};

const char* const kAssertKinds[] = {"eq",       "zero",     "dim", "hilbert", "mapok", "projform",
                                    "pushpull", "iso",      "basis", "blowupok"};

class Parser {
 public:
  Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Scene scene(const std::string& file) {
    Scene s;
    s.file = file;
    while (peek().kind != Tok::End) s.items.push_back(item());
    return s;
  }

  ExprPtr lone_expression() {
    ExprPtr e = expr();
    if (peek().kind != Tok::End) fail(peek(), "unexpected '" + peek().text + "' after expression");
    return e;
  }

 private:
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  const Token& next() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }

  [[noreturn]] static void fail(const Token& t, const std::string& msg) { throw ParseError(t.loc, msg); }

  static std::string describe(const Token& t) {
    switch (t.kind) {
      case Tok::End:
        return "end of input";
      case Tok::String:
        return "string \"" + t.text + "\"";
      default:
        return "'" + t.text + "'";
    }
  }

  bool is_punct(const char* p) const { return peek().kind == Tok::Punct && peek().text == p; }
  bool is_word(const char* w) const { return peek().kind == Tok::Ident && peek().text == w; }

  void punct(const char* p) {
    if (!is_punct(p)) fail(peek(), std::string("expected '") + p + "', found " + describe(peek()));
    next();
  }
  void word(const char* w) {
    if (!is_word(w)) fail(peek(), std::string("expected '") + w + "', found " + describe(peek()));
    next();
  }
  bool accept_punct(const char* p) {
    if (!is_punct(p)) return false;
    next();
    return true;
  }
  bool accept_word(const char* w) {
    if (!is_word(w)) return false;
    next();
    return true;
  }

  std::string name() {
    if (peek().kind != Tok::Ident) fail(peek(), "expected a name, found " + describe(peek()));
    return next().text;
  }

  long integer() {
    bool neg = accept_punct("-");
    if (peek().kind != Tok::Int) fail(peek(), "expected an integer, found " + describe(peek()));
    const Token& t = next();
    if (t.text.size() > 9) fail(t, "integer " + t.text + " is too large here");
    const long v = std::stol(t.text);
    return neg ? -v : v;
  }

  int small_int() { return static_cast<int>(integer()); }

  std::string string_lit() {
    if (peek().kind != Tok::String) fail(peek(), "expected a string, found " + describe(peek()));
    return next().text;
  }

  // ------------------------------------------------------------ expressions

  static ExprPtr node(Expr::Kind k, Location loc, std::vector<ExprPtr> args = {}) {
    auto e = std::make_shared<Expr>();
    e->kind = k;
    e->loc = std::move(loc);
    e->args = std::move(args);
    return e;
  }

  ExprPtr expr() {
    ExprPtr lhs = term();
    while (is_punct("+") || is_punct("-")) {
      const Token& op = next();
      ExprPtr rhs = term();
      lhs = node(op.text == "+" ? Expr::Kind::Add : Expr::Kind::Sub, op.loc, {lhs, rhs});
    }
    return lhs;
  }

  ExprPtr term() {
    ExprPtr lhs = unary();
    while (is_punct("*") || is_punct("/")) {
      const Token& op = next();
      ExprPtr rhs = unary();
      lhs = node(op.text == "*" ? Expr::Kind::Mul : Expr::Kind::Div, op.loc, {lhs, rhs});
    }
    return lhs;
  }

  ExprPtr unary() {
    if (is_punct("-")) {
      const Token& op = next();
      return node(Expr::Kind::Neg, op.loc, {unary()});
    }
    return power();
  }

  ExprPtr power() {
    ExprPtr base = primary();
    if (is_punct("^")) {
      const Token& op = next();
      if (peek().kind != Tok::Int) fail(peek(), "exponent must be a non-negative integer literal");
      const Token& t = next();
      if (t.text.size() > 4) fail(t, "exponent " + t.text + " is too large");
      auto e = std::make_shared<Expr>();
      e->kind = Expr::Kind::Pow;
      e->loc = op.loc;
      e->args = {base};
      e->exponent = std::stoi(t.text);
      if (is_punct("^")) fail(peek(), "chained exponents need parentheses");
      return e;
    }
    return base;
  }

  ExprPtr primary() {
    const Token& t = peek();
    if (t.kind == Tok::Int) {
      next();
      auto e = std::make_shared<Expr>();
      e->kind = Expr::Kind::Number;
      e->loc = t.loc;
      e->value = Rational(t.text);
      return e;
    }
    if (t.kind == Tok::Ident) {
      next();
      auto e = std::make_shared<Expr>();
      e->name = t.text;
      e->loc = t.loc;
      if (accept_punct("(")) {
        e->kind = Expr::Kind::Call;
        if (!is_punct(")")) {
          e->args.push_back(expr());
          while (accept_punct(",")) e->args.push_back(expr());
        }
        punct(")");
      } else {
        e->kind = Expr::Kind::Name;
      }
      return e;
    }
    if (accept_punct("(")) {
      ExprPtr inner = expr();
      punct(")");
      return inner;
    }
    fail(t, "expected an expression, found " + describe(t));
  }

  std::vector<ExprPtr> paren_exprs() {
    punct("(");
    std::vector<ExprPtr> out;
    if (!is_punct(")")) {
      out.push_back(expr());
      while (accept_punct(",")) out.push_back(expr());
    }
    punct(")");
    return out;
  }

  GenSpec gen_spec() {
    GenSpec g;
    g.name = name();
    punct(":");
    g.degree = small_int();
    return g;
  }

  // ------------------------------------------------------------------ items

  Item item() {
    const Token& head = peek();
    if (head.kind != Tok::Ident) fail(head, "expected a declaration keyword, found " + describe(head));
    const std::string kw = head.text;
    const Location loc = head.loc;
    next();
    if (kw == "ring") return {ring(), loc};
    if (kw == "class") return {class_item(), loc};
    if (kw == "quotient") return {quotient(), loc};
    if (kw == "adjoin") return {adjoin(), loc};
    if (kw == "pbundle") return {pbundle(), loc};
    if (kw == "blowup") return {blowup(), loc};
    if (kw == "fiberprod") return {fiberprod(), loc};
    if (kw == "pullback") return {pullback(), loc};
    if (kw == "pushforward") return {pushforward(), loc};
    if (kw == "fibration") return {fibration(), loc};
    if (kw == "taut") return {taut(), loc};
    if (kw == "assert") return {assertion(), loc};
    std::string all;
    for (const char* k : kItemKeywords) all += std::string(all.empty() ? "" : ", ") + k;
    fail(head, "unknown declaration '" + kw + "' (expected one of " + all + ")");
  }

  RingItem ring() {
    RingItem r;
    r.name = name();
    punct("{");
    word("gens");
    punct(":");
    r.gens.push_back(gen_spec());
    while (accept_punct(",")) r.gens.push_back(gen_spec());
    punct(";");
    word("rels");
    punct(":");
    if (!is_punct(";")) {
      r.rels.push_back(expr());
      while (accept_punct(",")) r.rels.push_back(expr());
    }
    punct(";");
    word("top");
    punct(":");
    r.top = small_int();
    accept_punct(";");
    punct("}");
    return r;
  }

  ClassItem class_item() {
    ClassItem c;
    c.name = name();
    word("in");
    c.ring = name();
    punct("=");
    c.value = expr();
    return c;
  }

  QuotientItem quotient() {
    QuotientItem q;
    q.name = name();
    word("of");
    q.ring = name();
    word("by");
    q.classes = paren_exprs();
    return q;
  }

  AdjoinItem adjoin() {
    AdjoinItem a;
    a.name = name();
    word("to");
    a.ring = name();
    word("class");
    a.gen = gen_spec();
    if (accept_word("rels")) a.rels = paren_exprs();
    return a;
  }

  PBundleItem pbundle() {
    PBundleItem p;
    p.name = name();
    word("over");
    p.base = name();
    word("rank");
    p.rank = small_int();
    word("chern");
    p.chern = paren_exprs();
    word("hyperplane");
    p.hyperplane = name();
    return p;
  }

  BlowupItem blowup() {
    BlowupItem b;
    b.name = name();
    word("ambient");
    b.ambient = name();
    word("center");
    b.center = name();
    word("pullback");
    b.pullback = name();
    word("pushforward");
    b.pushforward = name();
    word("normal");
    b.normal = paren_exprs();
    word("exceptional");
    b.exceptional = name();
    if (accept_word("names")) {
      punct("(");
      do {
        std::string from = name();
        punct("=>");
        b.names.emplace_back(std::move(from), name());
      } while (accept_punct(","));
      punct(")");
    }
    return b;
  }

  FiberProdItem fiberprod() {
    FiberProdItem f;
    f.name = name();
    word("of");
    f.a = name();
    word("and");
    f.b = name();
    word("over");
    f.base = name();
    word("via");
    f.pa = name();
    f.pb = name();
    // "pushforward NAME :" starts the next declaration instead.
    const bool next_item = peek(2).kind == Tok::Punct && peek(2).text == ":";
    if (!next_item && accept_word("pushforward")) f.pushforward = name();
    return f;
  }

  PullbackItem pullback() {
    PullbackItem p;
    p.name = name();
    punct(":");
    p.source = name();
    punct("->");
    p.target = name();
    punct("{");
    while (!is_punct("}")) {
      std::string g = name();
      punct("=>");
      p.images.emplace_back(std::move(g), expr());
      punct(";");
    }
    punct("}");
    return p;
  }

  PushforwardItem pushforward() {
    PushforwardItem p;
    p.name = name();
    punct(":");
    p.source = name();
    punct("->");
    p.target = name();
    word("shift");
    p.shift = small_int();
    if (accept_word("over")) p.over = name();
    if (accept_word("extends")) p.extends = name();
    punct("{");
    while (!is_punct("}")) {
      ExprPtr x = expr();
      punct("=>");
      p.values.emplace_back(std::move(x), expr());
      punct(";");
    }
    punct("}");
    return p;
  }

  FibrationItem fibration() {
    FibrationItem f;
    f.name = name();
    word("total");
    f.total = name();
    word("base");
    f.base = name();
    word("pullback");
    f.pullback = name();
    word("pushforward");
    f.pushforward = name();
    word("K");
    f.K = expr();
    if (accept_word("c1")) {
      f.c1 = expr();
      word("c2");
      f.c2 = expr();
    }
    return f;
  }

  TautItem taut() {
    TautItem t;
    t.name = name();
    word("cutoff");
    t.cutoff = small_int();
    word("genus");
    t.genus = small_int();
    word("degree");
    t.degree = small_int();
    t.ksquarezero = accept_word("ksquarezero");
    return t;
  }

  AssertItem assertion() {
    AssertItem a;
    const Token& k = peek();
    a.kind = name();
    bool known = false;
    for (const char* kind : kAssertKinds) known = known || a.kind == kind;
    if (!known) {
      std::string all;
      for (const char* kind : kAssertKinds) all += std::string(all.empty() ? "" : ", ") + kind;
      fail(k, "unknown assertion kind '" + a.kind + "' (expected one of " + all + ")");
    }
    if (accept_word("in")) a.ring = name();
    punct(":");
    if (a.kind == "eq") {
      a.exprs.push_back(expr());
      punct("==");
      a.exprs.push_back(expr());
    } else if (a.kind == "zero") {
      a.exprs.push_back(expr());
    } else if (a.kind == "dim") {
      if (is_word("ker") || is_word("im")) a.dim_mode = next().text;
      a.ints.push_back(integer());
      punct("==");
      a.ints.push_back(integer());
    } else if (a.kind == "hilbert") {
      punct("(");
      a.ints.push_back(integer());
      while (accept_punct(",")) a.ints.push_back(integer());
      punct(")");
    } else if (a.kind == "mapok" || a.kind == "iso" || a.kind == "blowupok") {
      a.names.push_back(name());
    } else if (a.kind == "projform" || a.kind == "pushpull") {
      a.names.push_back(name());
      punct(",");
      a.names.push_back(name());
      if (a.kind == "pushpull" && accept_word("scale")) a.scale = expr();
    } else if (a.kind == "basis") {
      a.exprs = paren_exprs();
    }
    if (accept_word("label")) a.label = string_lit();
    if (accept_word("expect")) {
      word("fail");
      a.expect_fail = true;
    }
    return a;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

Scene parse_scene(const std::string& text, const std::string& file) {
  return Parser(lex(text, file)).scene(file);
}

ExprPtr parse_expression(const std::string& text, const std::string& file) {
  return Parser(lex(text, file)).lone_expression();
}

}  // namespace chowkit::scene
