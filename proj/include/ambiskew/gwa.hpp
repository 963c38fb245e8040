#pragma once

// Generalized Weyl algebras T(A, alpha, u): XY = u, YX = alpha(u),
// Xa = beta(a)X, Ya = alpha(a)Y with beta = alpha^-1 gamma.

#include <map>
#include <memory>

#include "ambiskew/ambiskew.hpp"
#include "ambiskew/verdict.hpp"

namespace ambiskew {

struct GwaSpec {
  std::string name = "T";
  std::string xname = "X", yname = "Y";
  AlgebraPtr base;
  AutoPtr alpha, gamma, beta;
  AlgElem u;
};
using GwaPtr = std::shared_ptr<const GwaSpec>;

// gamma may be null: it is then computed from u.
GwaPtr make_gwa(std::string name, AlgebraPtr base, AutoPtr alpha, AlgElem u, AutoPtr gamma = nullptr);
// T = R / zR for conformal R; the splitting element becomes u.
GwaPtr gwa_from_ambiskew(const AlgebraPtr& r);

// sum_d c_d Z_d with Z_d = Y^d (d > 0), X^-d (d < 0), Z_0 = 1; coefficients
// on the left, no stored zeros.
struct GwaElement {
  GwaPtr spec;
  std::map<int, AlgElem> terms;

  bool is_zero() const { return terms.empty(); }
  AlgElem coeff(int d) const;
  bool operator==(const GwaElement& o) const;
  bool operator!=(const GwaElement& o) const { return !(*this == o); }
};

GwaElement gwa_zero(const GwaPtr& t);
GwaElement gwa_const(const GwaPtr& t, const AlgElem& a);
GwaElement gwa_X(const GwaPtr& t, int power = 1);
GwaElement gwa_Y(const GwaPtr& t, int power = 1);
GwaElement gwa_term(const GwaPtr& t, int degree, const AlgElem& c);

GwaElement operator+(const GwaElement& f, const GwaElement& g);
GwaElement operator-(const GwaElement& f, const GwaElement& g);
GwaElement gwa_mul(const GwaElement& f, const GwaElement& g);
inline GwaElement operator*(const GwaElement& f, const GwaElement& g) { return gwa_mul(f, g); }

// Image of an element of R under R -> R/zR (x -> X, y -> Y).
GwaElement gwa_image(const GwaPtr& t, const AlgElem& r_elem);

std::string to_string(const GwaElement& f);

Verdict gwa_simple(const GwaPtr& t, const Bounds& bounds = {});

}  // namespace ambiskew
