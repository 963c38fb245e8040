#include "ambiskew/dsl.hpp"

#include <cctype>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "ambiskew/coeff.hpp"

namespace ambiskew::dsl {

// ------------------------------------------------------------------ lexer

namespace {

struct Token {
  enum Kind { Ident, Int, Sym, Newline, End } kind = End;
  std::string text;
  Span span;
  size_t offset = 0;
};

std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto advance = [&](size_t n) {
    for (size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    char c = src[i];
    Span sp{line, col};
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    if (c == '\n') {
      out.push_back({Token::Newline, "\n", sp, i});
      advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      out.push_back({Token::Ident, src.substr(i, j - i), sp, i});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      out.push_back({Token::Int, src.substr(i, j - i), sp, i});
      advance(j - i);
      continue;
    }
    if (c == '-' && i + 1 < src.size() && src[i + 1] == '>') {
      out.push_back({Token::Sym, "->", sp, i});
      advance(2);
      continue;
    }
    if (std::string("()[]{},=+-*/^.").find(c) != std::string::npos) {
      out.push_back({Token::Sym, std::string(1, c), sp, i});
      advance(1);
      continue;
    }
    throw DslError(sp, std::string("unexpected character '") + c + "'");
  }
  out.push_back({Token::End, "", {line, col}, src.size()});
  return out;
}

// ------------------------------------------------------------------ parser

class Parser {
 public:
  Parser(const std::string& src) : src_(src), toks_(lex(src)) {}

  const Token& peek() const { return toks_[pos_]; }
  bool at_sym(const char* s) const { return peek().kind == Token::Sym && peek().text == s; }
  bool at_end() const { return peek().kind == Token::End; }

  const Token& take() {
    const Token& t = toks_[pos_];
    if (t.kind != Token::End) ++pos_;
    skip_nested_newlines();
    return t;
  }

  void expect_sym(const char* s) {
    if (!at_sym(s)) throw DslError(peek().span, std::string("expected '") + s + "', found " + describe(peek()));
    take();
  }

  std::string expect_ident(const char* what) {
    if (peek().kind != Token::Ident)
      throw DslError(peek().span, std::string("expected ") + what + ", found " + describe(peek()));
    return take().text;
  }

  void skip_newlines() {
    while (peek().kind == Token::Newline) ++pos_;
  }

  void end_statement() {
    if (peek().kind == Token::Newline) {
      ++pos_;
      return;
    }
    if (!at_end()) throw DslError(peek().span, "expected end of line, found " + describe(peek()));
  }

  // Newlines inside brackets are insignificant.
  void skip_nested_newlines() {
    if (depth_ > 0)
      while (toks_[pos_].kind == Token::Newline) ++pos_;
  }
  void open() {
    ++depth_;
    skip_nested_newlines();
  }
  void close() { --depth_; }

  ExprPtr expr() {
    ExprPtr l = term();
    while (at_sym("+") || at_sym("-")) {
      Token op = take();
      ExprPtr r = term();
      l = node(op.text == "+" ? Expr::Add : Expr::Sub, op.span, {l, r});
    }
    return l;
  }

  // Raw source text up to the next ')' on this line.
  std::string raw_until_close() {
    size_t start = peek().offset;
    while (!at_sym(")")) {
      if (peek().kind == Token::Newline || at_end()) throw DslError(peek().span, "expected ')'");
      ++pos_;
    }
    std::string s = src_.substr(start, peek().offset - start);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    return s;
  }

  static std::string describe(const Token& t) {
    switch (t.kind) {
      case Token::Newline:
        return "end of line";
      case Token::End:
        return "end of input";
      default:
        return "'" + t.text + "'";
    }
  }

 private:
  static ExprPtr node(Expr::Kind k, Span sp, std::vector<ExprPtr> args, long exponent = 0) {
    auto e = std::make_shared<Expr>();
    e->kind = k;
    e->span = sp;
    e->args = std::move(args);
    e->exponent = exponent;
    return e;
  }

  ExprPtr term() {
    ExprPtr l = unary();
    while (at_sym("*") || at_sym("/")) {
      Token op = take();
      ExprPtr r = unary();
      l = node(op.text == "*" ? Expr::Mul : Expr::Div, op.span, {l, r});
    }
    return l;
  }

  ExprPtr unary() {
    if (at_sym("-")) {
      Token op = take();
      return node(Expr::Neg, op.span, {unary()});
    }
    return power();
  }

  ExprPtr power() {
    ExprPtr base = atom();
    if (!at_sym("^")) return base;
    Token op = take();
    bool paren = false;
    if (at_sym("(")) {
      paren = true;
      take();
    }
    bool neg = false;
    if (at_sym("-")) {
      neg = true;
      take();
    }
    if (peek().kind != Token::Int) throw DslError(peek().span, "expected an integer exponent");
    Token n = take();
    if (paren) expect_sym(")");
    long e;
    try {
      e = std::stol(n.text);
    } catch (const std::exception&) {
      throw DslError(n.span, "exponent out of range");
    }
    return node(Expr::Pow, op.span, {base}, neg ? -e : e);
  }

  ExprPtr atom() {
    const Token& t = peek();
    if (t.kind == Token::Int) {
      auto e = std::make_shared<Expr>();
      e->kind = Expr::Num;
      e->text = t.text;
      e->span = t.span;
      take();
      return e;
    }
    if (t.kind == Token::Ident) {
      auto e = std::make_shared<Expr>();
      e->kind = Expr::Ident;
      e->text = t.text;
      e->span = t.span;
      take();
      return e;
    }
    if (at_sym("(")) {
      take();
      open();
      ExprPtr e = expr();
      close();
      expect_sym(")");
      return e;
    }
    throw DslError(t.span, "expected an expression, found " + describe(t));
  }

  const std::string& src_;
  std::vector<Token> toks_;
  size_t pos_ = 0;
  int depth_ = 0;
};

int prec(const Expr& e) {
  switch (e.kind) {
    case Expr::Add:
    case Expr::Sub:
      return 1;
    case Expr::Mul:
    case Expr::Div:
      return 2;
    case Expr::Neg:
      return 3;
    case Expr::Pow:
      return 4;
    default:
      return 5;
  }
}

std::string wrap(const Expr& e, int min_prec) {
  std::string s = print_expr(e);
  return prec(e) >= min_prec ? s : "(" + s + ")";
}

}  // namespace

bool operator==(const Expr& a, const Expr& b) {
  if (a.kind != b.kind || a.text != b.text || a.exponent != b.exponent || a.args.size() != b.args.size())
    return false;
  for (size_t i = 0; i < a.args.size(); ++i)
    if (!(*a.args[i] == *b.args[i])) return false;
  return true;
}

std::string print_expr(const Expr& e) {
  switch (e.kind) {
    case Expr::Num:
    case Expr::Ident:
      return e.text;
    case Expr::Neg:
      return "-" + wrap(*e.args[0], 3);
    case Expr::Add:
      return wrap(*e.args[0], 1) + " + " + wrap(*e.args[1], 2);
    case Expr::Sub:
      return wrap(*e.args[0], 1) + " - " + wrap(*e.args[1], 2);
    case Expr::Mul:
      return wrap(*e.args[0], 2) + "*" + wrap(*e.args[1], 3);
    case Expr::Div:
      return wrap(*e.args[0], 2) + "/" + wrap(*e.args[1], 3);
    case Expr::Pow:
      return wrap(*e.args[0], 5) + "^" + std::to_string(e.exponent);
  }
  return "";
}

ExprPtr parse_expr(const std::string& text) {
  Parser p(text);
  p.skip_newlines();
  ExprPtr e = p.expr();
  p.skip_newlines();
  if (!p.at_end()) throw DslError(p.peek().span, "unexpected " + Parser::describe(p.peek()));
  return e;
}

// ------------------------------------------------------------------ evaluation

namespace {

mpz_class integer(const Expr& e) { return mpz_class(e.text); }

std::optional<Scalar> named_scalar(const std::string& name, Ctx ctx) {
  if (name == "zeta") {
    if (ctx->characteristic != 0) return std::nullopt;
    return Scalar::zeta(ctx);
  }
  if (ctx->param_index(name) >= 0) return Scalar::param(ctx, name);
  return std::nullopt;
}

std::optional<AlgElem> find_generator(const AlgebraPtr& L, const std::string& name) {
  AlgebraPtr cur = L;
  for (;;) {
    if (cur->family == Family::Nested) {
      const Ring& R = ring_of(cur);
      if (name == R.yname) return embed(L, gen_y(cur));
      if (name == R.xname) return embed(L, gen_x(cur));
      cur = R.base;
      continue;
    }
    if (cur->family != Family::Field && name == cur->gen) return embed(L, generator(cur));
    return std::nullopt;
  }
}

AlgElem invert(const AlgElem& a, Span sp) {
  if (auto s = a.as_scalar()) {
    if (s->is_zero()) throw DslError(sp, "division by zero");
    return scalar(a.alg, s->inv());
  }
  UnitCheck uc = unit_check(a);
  if (uc.status != Status::Holds) throw DslError(sp, "'" + to_string(a) + "' is not a unit");
  return *uc.inverse;
}

}  // namespace

Scalar eval_scalar(const Expr& e, Ctx ctx) {
  switch (e.kind) {
    case Expr::Num:
      return Scalar(ctx, mpq_class(integer(e)));
    case Expr::Ident:
      if (auto s = named_scalar(e.text, ctx)) return *s;
      throw DslError(e.span, "unknown scalar '" + e.text + "'");
    case Expr::Neg:
      return -eval_scalar(*e.args[0], ctx);
    case Expr::Add:
      return eval_scalar(*e.args[0], ctx) + eval_scalar(*e.args[1], ctx);
    case Expr::Sub:
      return eval_scalar(*e.args[0], ctx) - eval_scalar(*e.args[1], ctx);
    case Expr::Mul:
      return eval_scalar(*e.args[0], ctx) * eval_scalar(*e.args[1], ctx);
    case Expr::Div: {
      Scalar d = eval_scalar(*e.args[1], ctx);
      if (d.is_zero()) throw DslError(e.span, "division by zero");
      return eval_scalar(*e.args[0], ctx) / d;
    }
    case Expr::Pow: {
      Scalar b = eval_scalar(*e.args[0], ctx);
      if (e.exponent < 0 && b.is_zero()) throw DslError(e.span, "division by zero");
      return b.pow(e.exponent);
    }
  }
  throw DslError(e.span, "bad expression");
}

AlgElem eval_element(const Expr& e, const AlgebraPtr& alg, Ctx ctx) {
  auto rec = [&](size_t i) { return eval_element(*e.args[i], alg, ctx); };
  switch (e.kind) {
    case Expr::Num:
      return scalar(alg, Scalar(ctx, mpq_class(integer(e))));
    case Expr::Ident:
      if (auto g = find_generator(alg, e.text)) return *g;
      if (auto s = named_scalar(e.text, ctx)) return scalar(alg, *s);
      throw DslError(e.span, "unknown identifier '" + e.text + "' in " + alg->name);
    case Expr::Neg:
      return -rec(0);
    case Expr::Add:
      return rec(0) + rec(1);
    case Expr::Sub:
      return rec(0) - rec(1);
    case Expr::Mul:
      return rec(0) * rec(1);
    case Expr::Div:
      return rec(0) * invert(rec(1), e.span);
    case Expr::Pow: {
      AlgElem b = rec(0);
      if (e.exponent < 0) b = invert(b, e.span);
      return pow(b, static_cast<unsigned>(e.exponent < 0 ? -e.exponent : e.exponent));
    }
  }
  throw DslError(e.span, "bad expression");
}

GwaElement eval_gwa(const Expr& e, const GwaPtr& t, Ctx ctx) {
  auto rec = [&](size_t i) { return eval_gwa(*e.args[i], t, ctx); };
  switch (e.kind) {
    case Expr::Ident:
      if (e.text == t->yname) return gwa_Y(t);
      if (e.text == t->xname) return gwa_X(t);
      [[fallthrough]];
    case Expr::Num:
      return gwa_const(t, eval_element(e, t->base, ctx));
    case Expr::Neg:
      return gwa_zero(t) - rec(0);
    case Expr::Add:
      return rec(0) + rec(1);
    case Expr::Sub:
      return rec(0) - rec(1);
    case Expr::Mul:
      return rec(0) * rec(1);
    case Expr::Div: {
      GwaElement d = rec(1);
      if (d.terms.size() != 1 || !d.terms.count(0)) throw DslError(e.span, "division by a non-unit");
      return rec(0) * gwa_const(t, invert(d.terms.at(0), e.span));
    }
    case Expr::Pow: {
      if (e.exponent < 0) throw DslError(e.span, "negative powers are not available here");
      GwaElement r = gwa_const(t, one(t->base)), b = rec(0);
      for (long k = 0; k < e.exponent; ++k) r = r * b;
      return r;
    }
  }
  throw DslError(e.span, "bad expression");
}

AlgElem parse_element(const std::string& text, const AlgebraPtr& alg) {
  return eval_element(*parse_expr(text), alg, alg->ctx);
}

TorusMatrix read_torus(const std::string& path, Ctx ctx) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open torus file " + path);
  TorusMatrix q;
  std::string line;
  while (std::getline(in, line)) {
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<Scalar> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(eval_scalar(*parse_expr(cell), ctx));
    q.push_back(row);
  }
  return q;
}

std::string torus_path(const Document& doc, const std::string& target) {
  std::filesystem::path p(target);
  if (p.is_relative() && !doc.base_dir.empty()) p = std::filesystem::path(doc.base_dir) / p;
  return p.string();
}

// ------------------------------------------------------------------ statements

bool operator==(const Statement& a, const Statement& b) {
  if (a.type != b.type || a.name != b.name || a.kind != b.kind || a.characteristic != b.characteristic ||
      a.cyclotomic_order != b.cyclotomic_order || a.params != b.params || a.target != b.target ||
      a.args.size() != b.args.size() || a.images.size() != b.images.size())
    return false;
  for (size_t i = 0; i < a.args.size(); ++i)
    if (a.args[i].key != b.args[i].key || !(*a.args[i].value == *b.args[i].value)) return false;
  for (size_t i = 0; i < a.images.size(); ++i)
    if (a.images[i].first != b.images[i].first || !(*a.images[i].second == *b.images[i].second)) return false;
  return true;
}

std::vector<const Statement*> Document::checks() const {
  std::vector<const Statement*> out;
  for (const auto& s : statements)
    if (s.type == Statement::Check) out.push_back(&s);
  return out;
}

namespace {

std::string print_args(const std::vector<Arg>& args) {
  std::string out;
  for (size_t i = 0; i < args.size(); ++i) {
    if (i) out += ", ";
    if (!args[i].key.empty()) out += args[i].key + " = ";
    out += print_expr(*args[i].value);
  }
  return out;
}

// Semantic construction of each statement into the environment.
class Builder {
 public:
  Builder(Document& doc) : doc_(doc), env_(doc.env) {}

  void apply(const Statement& s) {
    try {
      switch (s.type) {
        case Statement::Field:
          field(s);
          break;
        case Statement::Base:
          base(s);
          break;
        case Statement::Auto:
          automorphism(s);
          break;
        case Statement::Ring:
          ring(s);
          break;
        case Statement::Check:
          check(s);
          break;
      }
    } catch (const DslError&) {
      throw;
    } catch (const std::exception& ex) {
      throw DslError(s.span, ex.what());
    }
  }

  Ctx ctx() {
    if (!env_.ctx) env_.ctx = ScalarContext::get(0, 1, {});
    return env_.ctx;
  }

 private:
  void declare(const Statement& s) {
    if (names_.count(s.name)) throw DslError(s.span, "'" + s.name + "' is already declared");
    if (s.name == "id") throw DslError(s.span, "'id' is reserved for the identity automorphism");
    names_.insert(s.name);
  }

  // Generator names must avoid scalar names and the generators of the
  // tower below; sibling rings may reuse them.
  void claim_generator(const std::string& g, Span sp, const AlgebraPtr& below = nullptr) {
    if (g == "zeta" || g == "id" || ctx()->param_index(g) >= 0)
      throw DslError(sp, "generator name '" + g + "' clashes with a scalar name");
    if (below && find_generator(below, g))
      throw DslError(sp, "generator name '" + g + "' is already used in " + below->name);
  }

  static const Arg* keyed(const Statement& s, const std::string& key) {
    for (const auto& a : s.args)
      if (a.key == key) return &a;
    return nullptr;
  }

  const Arg& required(const Statement& s, const std::string& key) {
    if (auto a = keyed(s, key)) return *a;
    throw DslError(s.span, s.kind + " needs '" + key + " = ...'");
  }

  std::vector<const Arg*> positional(const Statement& s) {
    std::vector<const Arg*> out;
    for (const auto& a : s.args)
      if (a.key.empty()) out.push_back(&a);
    return out;
  }

  void allow_keys(const Statement& s, std::set<std::string> keys) {
    for (const auto& a : s.args)
      if (!a.key.empty() && !keys.count(a.key))
        throw DslError(a.value->span, "unknown argument '" + a.key + "' for " + s.kind);
  }

  static std::string ident_of(const Arg& a, const char* what) {
    if (a.value->kind != Expr::Ident) throw DslError(a.value->span, std::string("expected ") + what);
    return a.value->text;
  }

  AlgebraPtr algebra(const Arg& a) {
    std::string n = ident_of(a, "an algebra name");
    auto it = env_.algebras.find(n);
    if (it == env_.algebras.end()) throw DslError(a.value->span, "unknown algebra '" + n + "'");
    return it->second;
  }

  AutoPtr automorphism_ref(const Arg& a, const AlgebraPtr& on) {
    std::string n = ident_of(a, "an automorphism name");
    if (n == "id") return auto_identity(on);
    auto it = env_.autos.find(n);
    if (it == env_.autos.end()) throw DslError(a.value->span, "unknown automorphism '" + n + "'");
    if (it->second->alg != on)
      throw DslError(a.value->span, "'" + n + "' is declared on " + it->second->alg->name + ", not on " + on->name);
    return it->second;
  }

  void field(const Statement& s) {
    if (seen_other_)
      throw DslError(s.span, "the field declaration must come before every other statement");
    if (env_.ctx) throw DslError(s.span, "the field is already declared");
    std::set<std::string> uniq(s.params.begin(), s.params.end());
    if (uniq.size() != s.params.size()) throw DslError(s.span, "parameter names must be distinct");
    for (const auto& p : s.params)
      if (p == "zeta" || p == "id") throw DslError(s.span, "'" + p + "' cannot be a parameter name");
    env_.ctx = ScalarContext::get(s.characteristic, s.cyclotomic_order, s.params);
  }

  void base(const Statement& s) {
    seen_other_ = true;
    declare(s);
    Ctx c = ctx();
    auto pos = positional(s);
    auto gen_name = [&](const char* dflt) {
      std::string g = pos.empty() ? dflt : ident_of(*pos[0], "a generator name");
      claim_generator(g, s.span);
      return g;
    };
    AlgebraPtr A;
    if (s.kind == "field") {
      allow_keys(s, {});
      A = make_field(c, s.name);
    } else if (s.kind == "cyclic_group") {
      allow_keys(s, {"n", "epsilon"});
      const Arg& n = required(s, "n");
      if (n.value->kind != Expr::Num) throw DslError(n.value->span, "n must be a positive integer");
      mpz_class nv = integer(*n.value);
      if (nv < 1 || nv > 10000) throw DslError(n.value->span, "n must be a positive integer");
      Scalar eps = eval_scalar(*required(s, "epsilon").value, c);
      A = make_cyclic(c, static_cast<int>(nv.get_si()), eps, gen_name("s"), s.name);
    } else if (s.kind == "laurent") {
      allow_keys(s, {});
      A = make_laurent(c, gen_name("t"), s.name);
    } else if (s.kind == "poly") {
      allow_keys(s, {});
      A = make_poly(c, gen_name("t"), s.name);
    } else if (s.kind == "quadratic") {
      allow_keys(s, {"d"});
      Scalar d = eval_scalar(*required(s, "d").value, c);
      if (d.is_zero()) throw DslError(s.span, "d must be nonzero");
      A = make_quadratic(c, d, gen_name("s"), s.name);
    } else {
      throw DslError(s.span, "unknown base algebra '" + s.kind + "'");
    }
    env_.algebras[s.name] = A;
  }

  AutoPtr build_auto(const AlgebraPtr& L, std::map<std::string, std::pair<ExprPtr, bool>>& images, Span sp) {
    Ctx c = ctx();
    auto image = [&](const std::string& g) -> const Expr* {
      auto it = images.find(g);
      if (it == images.end()) return nullptr;
      it->second.second = true;
      return it->second.first.get();
    };
    if (L->family == Family::Nested) {
      const Ring& R = ring_of(L);
      AutoPtr inner = build_auto(R.base, images, sp);
      const Expr* ey = image(R.yname);
      const Expr* ex = image(R.xname);
      AlgElem iy = ey ? eval_element(*ey, L, c) : gen_y(L);
      AlgElem ix = ex ? eval_element(*ex, L, c) : gen_x(L);
      AutoPtr phi = auto_nested(L, inner, iy, ix);
      if (auto err = validate_auto(phi)) throw DslError(sp, *err);
      return phi;
    }
    if (L->family == Family::Field) return auto_identity(L);
    const Expr* e = image(L->gen);
    if (!e) return auto_identity(L);
    AlgElem img = eval_element(*e, L, c);
    const std::string& g = L->gen;
    AutoPtr phi;
    switch (L->family) {
      case Family::Cyclic:
      case Family::Laurent:
        if (img.flat.size() != 1 || img.flat[0].first != 1)
          throw DslError(e->span, "image of " + g + " must be a nonzero scalar multiple of " + g);
        phi = auto_scale(L, img.flat[0].second);
        break;
      case Family::Poly: {
        Scalar lam = img.coeff(1);
        for (const auto& [k, v] : img.flat)
          if (k > 1) lam = Scalar(c);
        if (lam.is_zero()) throw DslError(e->span, "image of " + g + " must be lambda*" + g + " + c with lambda != 0");
        phi = auto_affine(L, lam, img.coeff(0));
        break;
      }
      case Family::Quadratic: {
        Scalar a1 = img.coeff(1);
        if (!img.coeff(0).is_zero() || !(a1.is_one() || (-a1).is_one()))
          throw DslError(e->span, "image of " + g + " must be " + g + " or -" + g);
        phi = auto_sign(L, a1.is_one() ? 1 : -1);
        break;
      }
      default:
        break;
    }
    if (auto err = validate_auto(phi)) throw DslError(e->span, *err);
    return phi;
  }

  void automorphism(const Statement& s) {
    seen_other_ = true;
    declare(s);
    auto it = env_.algebras.find(s.kind);
    if (it == env_.algebras.end()) throw DslError(s.span, "unknown algebra '" + s.kind + "'");
    std::map<std::string, std::pair<ExprPtr, bool>> images;
    for (const auto& [g, e] : s.images) {
      if (images.count(g)) throw DslError(e->span, "generator '" + g + "' is mapped twice");
      images[g] = {e, false};
    }
    AutoPtr phi = build_auto(it->second, images, s.span);
    for (const auto& [g, e] : images)
      if (!e.second) throw DslError(e.first->span, "'" + g + "' is not a generator of " + s.kind);
    env_.autos[s.name] = phi;
  }

  void ring(const Statement& s) {
    seen_other_ = true;
    declare(s);
    Ctx c = ctx();
    auto pos = positional(s);
    if (s.kind == "ambiskew") {
      allow_keys(s, {"v", "rho", "gamma", "x", "y"});
      if (pos.size() != 2) throw DslError(s.span, "ambiskew(A, alpha, v = ..., rho = ...)");
      AmbiskewSpec spec;
      spec.name = s.name;
      spec.base = algebra(*pos[0]);
      spec.alpha = automorphism_ref(*pos[1], spec.base);
      const Arg& rho = required(s, "rho");
      spec.rho = eval_scalar(*rho.value, c);
      if (spec.rho.is_zero()) throw DslError(rho.value->span, "rho must be nonzero");
      spec.v = eval_element(*required(s, "v").value, spec.base, c);
      if (auto g = keyed(s, "gamma")) spec.gamma = automorphism_ref(*g, spec.base);
      if (auto a = keyed(s, "y")) spec.yname = ident_of(*a, "a generator name");
      if (auto a = keyed(s, "x")) spec.xname = ident_of(*a, "a generator name");
      if (spec.xname == spec.yname) throw DslError(s.span, "x and y need different names");
      claim_generator(spec.yname, s.span, spec.base);
      claim_generator(spec.xname, s.span, spec.base);
      env_.algebras[s.name] = construct(spec);
    } else if (s.kind == "gwa") {
      allow_keys(s, {"u", "gamma", "X", "Y"});
      if (pos.size() != 2) throw DslError(s.span, "gwa(A, alpha, u = ...)");
      AlgebraPtr A = algebra(*pos[0]);
      AutoPtr alpha = automorphism_ref(*pos[1], A);
      AlgElem u = eval_element(*required(s, "u").value, A, c);
      AutoPtr gamma;
      if (auto g = keyed(s, "gamma")) gamma = automorphism_ref(*g, A);
      auto t = std::const_pointer_cast<GwaSpec>(make_gwa(s.name, A, alpha, u, gamma));
      name_gwa(s, *t, "X", "Y");
      env_.gwas[s.name] = t;
    } else if (s.kind == "quotient_by_casimir") {
      allow_keys(s, {"X", "Y"});
      if (pos.size() != 1) throw DslError(s.span, "quotient_by_casimir(R)");
      AlgebraPtr R = algebra(*pos[0]);
      if (R->family != Family::Nested) throw DslError(s.span, "quotient_by_casimir needs an ambiskew ring");
      auto t = std::const_pointer_cast<GwaSpec>(gwa_from_ambiskew(R));
      t->name = s.name;
      std::string X = ring_of(R).xname, Y = ring_of(R).yname;
      for (auto& ch : X) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
      for (auto& ch : Y) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
      name_gwa(s, *t, X, Y);
      env_.gwas[s.name] = t;
    } else {
      throw DslError(s.span, "unknown ring constructor '" + s.kind + "'");
    }
    env_.last_ring = s.name;
  }

  void name_gwa(const Statement& s, GwaSpec& t, const std::string& X, const std::string& Y) {
    t.xname = X;
    t.yname = Y;
    if (auto a = keyed(s, "X")) t.xname = ident_of(*a, "a generator name");
    if (auto a = keyed(s, "Y")) t.yname = ident_of(*a, "a generator name");
    if (t.xname == t.yname) throw DslError(s.span, "X and Y need different names");
    for (const auto& g : {t.xname, t.yname})
      if (g == "zeta" || ctx()->param_index(g) >= 0 || find_generator(t.base, g))
        throw DslError(s.span, "generator name '" + g + "' is already in use");
  }

  void check(const Statement& s) {
    seen_other_ = true;
    static const std::set<std::string> kinds{"simple", "conformal", "localized_simple", "torus"};
    if (!kinds.count(s.kind)) throw DslError(s.span, "unknown check '" + s.kind + "'");
    if (s.kind == "torus") {
      TorusMatrix q = read_torus(torus_path(doc_, s.target), ctx());
      if (auto err = validate_torus(q)) throw DslError(s.span, "torus matrix: " + *err);
      return;
    }
    bool ambiskew = env_.algebras.count(s.target) && env_.algebras.at(s.target)->family == Family::Nested;
    bool gwa = env_.gwas.count(s.target) > 0;
    if (!ambiskew && !gwa) throw DslError(s.span, "unknown ring '" + s.target + "'");
    if (gwa && s.kind != "simple") throw DslError(s.span, s.kind + " applies to ambiskew rings only");
  }

  Document& doc_;
  Environment& env_;
  std::set<std::string> names_;
  bool seen_other_ = false;
};

Statement parse_statement(Parser& p) {
  Statement s;
  const Token& kw = p.peek();
  s.span = kw.span;
  std::string word = p.expect_ident("a statement keyword");
  if (word == "field") {
    s.type = Statement::Field;
    s.name = p.expect_ident("Q or GF");
    if (s.name == "Q") {
      if (p.at_sym("(")) {
        p.take();
        Span zs = p.peek().span;
        std::string z = p.expect_ident("zeta_N");
        if (z.rfind("zeta_", 0) != 0 || z.size() == 5 ||
            z.find_first_not_of("0123456789", 5) != std::string::npos)
          throw DslError(zs, "expected zeta_N");
        s.cyclotomic_order = std::stoi(z.substr(5));
        if (s.cyclotomic_order < 1 || s.cyclotomic_order > 1000) throw DslError(zs, "N out of range");
        p.expect_sym(")");
      }
    } else if (s.name == "GF") {
      p.expect_sym("(");
      if (p.peek().kind != Token::Int) throw DslError(p.peek().span, "expected a prime");
      Span ps = p.peek().span;
      s.characteristic = std::stol(p.take().text);
      mpz_class pz = s.characteristic;
      if (s.characteristic < 2 || mpz_probab_prime_p(pz.get_mpz_t(), 30) == 0)
        throw DslError(ps, "characteristic must be prime");
      p.expect_sym(")");
    } else {
      throw DslError(s.span, "field must be Q, Q(zeta_N) or GF(p)");
    }
    if (p.at_sym("[")) {
      p.take();
      p.open();
      if (!p.at_sym("]")) {
        s.params.push_back(p.expect_ident("a parameter name"));
        while (p.at_sym(",")) {
          p.take();
          s.params.push_back(p.expect_ident("a parameter name"));
        }
      }
      p.close();
      p.expect_sym("]");
    }
  } else if (word == "base" || word == "ring") {
    s.type = word == "base" ? Statement::Base : Statement::Ring;
    s.name = p.expect_ident("a name");
    p.expect_sym("=");
    s.kind = p.expect_ident("a constructor");
    p.expect_sym("(");
    p.open();
    while (!p.at_sym(")")) {
      Arg a;
      ExprPtr first = p.expr();
      if (p.at_sym("=")) {
        if (first->kind != Expr::Ident) throw DslError(first->span, "argument name expected before '='");
        p.take();
        a.key = first->text;
        a.value = p.expr();
      } else {
        a.value = first;
      }
      s.args.push_back(a);
      if (!p.at_sym(",")) break;
      p.take();
    }
    p.close();
    p.expect_sym(")");
  } else if (word == "auto") {
    s.type = Statement::Auto;
    s.name = p.expect_ident("a name");
    if (p.expect_ident("'on'") != "on") throw DslError(s.span, "expected 'on'");
    s.kind = p.expect_ident("an algebra name");
    p.expect_sym("{");
    p.open();
    while (!p.at_sym("}")) {
      std::string g = p.expect_ident("a generator name");
      p.expect_sym("->");
      s.images.emplace_back(g, p.expr());
      if (!p.at_sym(",")) break;
      p.take();
    }
    p.close();
    p.expect_sym("}");
  } else if (word == "check") {
    s.type = Statement::Check;
    s.kind = p.expect_ident("a check name");
    p.expect_sym("(");
    s.target = p.raw_until_close();
    if (s.target.empty()) throw DslError(p.peek().span, "check needs a target");
    p.take();
  } else {
    throw DslError(s.span, "unknown statement '" + word + "'");
  }
  p.end_statement();
  return s;
}

}  // namespace

Document parse_spec(const std::string& text, const std::string& base_dir) {
  Document doc;
  doc.base_dir = base_dir;
  Parser p(text);
  Builder b(doc);
  for (;;) {
    p.skip_newlines();
    if (p.at_end()) break;
    doc.statements.push_back(parse_statement(p));
    b.apply(doc.statements.back());
  }
  b.ctx();
  return doc;
}

Document parse_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_spec(ss.str(), std::filesystem::path(path).parent_path().string());
}

std::string print_spec(const Document& doc) {
  std::string out;
  for (const auto& s : doc.statements) {
    switch (s.type) {
      case Statement::Field: {
        if (s.characteristic) {
          out += "field GF(" + std::to_string(s.characteristic) + ")";
        } else {
          out += "field Q";
          if (s.cyclotomic_order != 1) out += "(zeta_" + std::to_string(s.cyclotomic_order) + ")";
        }
        if (!s.params.empty()) {
          out += "[";
          for (size_t i = 0; i < s.params.size(); ++i) out += (i ? ", " : "") + s.params[i];
          out += "]";
        }
        break;
      }
      case Statement::Base:
        out += "base " + s.name + " = " + s.kind + "(" + print_args(s.args) + ")";
        break;
      case Statement::Ring:
        out += "ring " + s.name + " = " + s.kind + "(" + print_args(s.args) + ")";
        break;
      case Statement::Auto: {
        out += "auto " + s.name + " on " + s.kind + " {";
        for (size_t i = 0; i < s.images.size(); ++i)
          out += (i ? ", " : " ") + s.images[i].first + " -> " + print_expr(*s.images[i].second);
        out += s.images.empty() ? "}" : " }";
        break;
      }
      case Statement::Check:
        out += "check " + s.kind + "(" + s.target + ")";
        break;
    }
    out += "\n";
  }
  return out;
}

bool same_statements(const Document& a, const Document& b) {
  if (a.statements.size() != b.statements.size()) return false;
  for (size_t i = 0; i < a.statements.size(); ++i)
    if (!(a.statements[i] == b.statements[i])) return false;
  return true;
}

}  // namespace ambiskew::dsl
