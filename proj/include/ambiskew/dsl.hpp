#pragma once

// The .ask specification language.
//
//   field Q(zeta_4)[q, lambda]          # or: field Q, field GF(5)[q]
//   base A = cyclic_group(n = 4, epsilon = zeta)
//   base B = laurent(t)                 # also poly(t), quadratic(s, d = -1), field()
//   auto alpha on A { s -> zeta*s }
//   ring R = ambiskew(A, alpha, v = 1 + s, rho = q, y = y1, x = x1)
//   ring T = gwa(B, beta, u = t)
//   ring U = quotient_by_casimir(R)
//   check simple(R)                     # also conformal, localized_simple, torus(Q.csv)
//
// Statements end at a newline; braces may span lines; `#` starts a comment.

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "ambiskew/ambiskew.hpp"
#include "ambiskew/gwa.hpp"
#include "ambiskew/localization.hpp"

namespace ambiskew::dsl {

struct Span {
  int line = 0;
  int col = 0;
};

class DslError : public std::runtime_error {
 public:
  DslError(Span s, const std::string& msg)
      : std::runtime_error(std::to_string(s.line) + ":" + std::to_string(s.col) + ": " + msg), span(s) {}
  Span span;
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum Kind { Num, Ident, Neg, Add, Sub, Mul, Div, Pow } kind = Num;
  std::string text;   // Num: decimal digits; Ident: name
  long exponent = 0;  // Pow
  std::vector<ExprPtr> args;
  Span span;
};
bool operator==(const Expr& a, const Expr& b);
std::string print_expr(const Expr& e);
ExprPtr parse_expr(const std::string& text);

struct Arg {
  std::string key;   // empty for positional
  ExprPtr value;
};

struct Statement {
  enum Type { Field, Base, Auto, Ring, Check } type = Field;
  Span span;
  std::string name;   // Base/Auto/Ring name; Field: "Q" or "GF"
  std::string kind;   // Base/Ring constructor, Check kind, Auto carrier
  long characteristic = 0;
  int cyclotomic_order = 1;
  std::vector<std::string> params;
  std::vector<Arg> args;
  std::vector<std::pair<std::string, ExprPtr>> images;   // Auto
  std::string target;                                    // Check
};
bool operator==(const Statement& a, const Statement& b);

// Objects built from the statements, in declaration order.
struct Environment {
  Ctx ctx = nullptr;
  std::map<std::string, AlgebraPtr> algebras;   // bases and ambiskew rings
  std::map<std::string, AutoPtr> autos;
  std::map<std::string, GwaPtr> gwas;
  std::string last_ring;
};

struct Document {
  std::vector<Statement> statements;
  Environment env;
  std::string base_dir;   // for relative torus paths

  std::vector<const Statement*> checks() const;
};

// Parses and validates; throws DslError with line:column.
Document parse_spec(const std::string& text, const std::string& base_dir = ".");
// Reads and parses a .ask file; torus paths resolve against its directory.
Document parse_file(const std::string& path);
std::string print_spec(const Document& doc);
bool same_statements(const Document& a, const Document& b);

Scalar eval_scalar(const Expr& e, Ctx ctx);
AlgElem eval_element(const Expr& e, const AlgebraPtr& alg, Ctx ctx);
GwaElement eval_gwa(const Expr& e, const GwaPtr& t, Ctx ctx);
// Element text produced by to_string, read back in `alg`.
AlgElem parse_element(const std::string& text, const AlgebraPtr& alg);

// n x n table, one row per line, comma separated scalar literals.
TorusMatrix read_torus(const std::string& path, Ctx ctx);
// Path of a torus check target, relative to the document's directory.
std::string torus_path(const Document& doc, const std::string& target);

}  // namespace ambiskew::dsl
