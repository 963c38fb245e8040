#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ambiskew/scalars.hpp"
#include "ambiskew/verdict.hpp"

namespace ambiskew {

enum class Family { Field, Cyclic, Laurent, Poly, Quadratic, Nested };

const char* family_name(Family f);

struct Ring;
struct Algebra;
using AlgebraPtr = std::shared_ptr<const Algebra>;
using RingPtr = std::shared_ptr<const Ring>;

struct Algebra {
  Family family = Family::Field;
  Ctx ctx = nullptr;
  std::string name;
  std::string gen;            // s or t for the one-generator families
  int n = 0;                  // cyclic order
  Scalar eps;                 // cyclic: primitive n-th root of unity
  Scalar d;                   // quadratic: s^2 = d
  std::optional<Scalar> root; // quadratic: r with r^2 = d when d is a square
  RingPtr ring;               // nested

  bool commutative() const { return family != Family::Nested; }
  // Base of a nested algebra, or nullptr.
  AlgebraPtr inner() const;
};

AlgebraPtr make_field(Ctx ctx, std::string name = "F");
AlgebraPtr make_cyclic(Ctx ctx, int n, const Scalar& eps, std::string gen = "s",
                       std::string name = "A");
AlgebraPtr make_laurent(Ctx ctx, std::string gen = "t", std::string name = "A");
AlgebraPtr make_poly(Ctx ctx, std::string gen = "t", std::string name = "A");
AlgebraPtr make_quadratic(Ctx ctx, const Scalar& d, std::string gen = "s",
                          std::string name = "A");

struct NTerm;

// Element of a coefficient algebra. Flat families store basis index ->
// coefficient; nested algebras store normal-form terms x^i a_ij y^j.
class AlgElem {
 public:
  AlgebraPtr alg;
  std::vector<std::pair<int, Scalar>> flat;
  std::vector<NTerm> nest;

  AlgElem() = default;
  explicit AlgElem(AlgebraPtr a) : alg(std::move(a)) {}

  bool is_zero() const { return flat.empty() && nest.empty(); }
  Ctx ctx() const { return alg->ctx; }
  // Coefficient of basis index k in a flat family.
  Scalar coeff(int k) const;
  // Coefficient at (i, j) in a nested family.
  AlgElem coeff(int i, int j) const;
  bool in_degree_zero() const;   // nested: only the (0,0) term
  // Scalar value when the element is a scalar multiple of 1.
  std::optional<Scalar> as_scalar() const;

  bool operator==(const AlgElem& o) const;
  bool operator!=(const AlgElem& o) const { return !(*this == o); }
};

struct NTerm {
  int i = 0, j = 0;
  AlgElem c;
};

AlgElem zero(const AlgebraPtr& a);
AlgElem one(const AlgebraPtr& a);
AlgElem scalar(const AlgebraPtr& a, const Scalar& c);
AlgElem monomial(const AlgebraPtr& a, int k, const Scalar& c);       // flat
AlgElem nested_term(const AlgebraPtr& a, int i, int j, const AlgElem& c);
AlgElem generator(const AlgebraPtr& a);                              // s or t
// Embeds an element of a sub-algebra in the tower into `a`.
AlgElem embed(const AlgebraPtr& a, const AlgElem& e);

AlgElem operator+(const AlgElem& a, const AlgElem& b);
AlgElem operator-(const AlgElem& a, const AlgElem& b);
AlgElem operator-(const AlgElem& a);
AlgElem operator*(const AlgElem& a, const AlgElem& b);
AlgElem operator*(const Scalar& c, const AlgElem& a);
AlgElem pow(const AlgElem& a, unsigned e);

std::string to_string(const AlgElem& a);
inline std::ostream& operator<<(std::ostream& os, const AlgElem& a) { return os << to_string(a); }

// Unit decision with inverse (Holds) or a non-unit witness (Fails).
struct UnitCheck {
  Status status = Status::Inconclusive;
  std::optional<AlgElem> inverse;
  json witness = json::object();
};
UnitCheck unit_check(const AlgElem& a);

// Character values a(eps^l) for Cyclic, a(+-r) for split Quadratic, a for Field.
// Empty for families without a character decomposition.
std::vector<Scalar> characters(const AlgElem& a);
bool has_characters(const AlgebraPtr& a);
// Domain families: Field, Laurent, Poly, non-split Quadratic, nested over these.
bool is_domain(const AlgebraPtr& a);

// ------------------------------------------------------------ automorphisms

struct Auto;
using AutoPtr = std::shared_ptr<const Auto>;

// F-linear automorphism of a catalog algebra.
//   Cyclic, Laurent: gen -> lam * gen
//   Poly:            t -> lam * t + shift
//   Quadratic:       s -> sign * s
//   Nested:          restriction `inner` on the base, y -> img_y, x -> img_x
struct Auto {
  AlgebraPtr alg;
  Scalar lam;
  Scalar shift;
  int sign = 1;
  AutoPtr inner;
  AlgElem img_y, img_x;
};

AutoPtr auto_identity(const AlgebraPtr& a);
AutoPtr auto_scale(const AlgebraPtr& a, const Scalar& lam);
AutoPtr auto_affine(const AlgebraPtr& a, const Scalar& lam, const Scalar& shift);
AutoPtr auto_sign(const AlgebraPtr& a, int sign);
AutoPtr auto_nested(const AlgebraPtr& a, AutoPtr inner, AlgElem img_y, AlgElem img_x);

AlgElem apply_auto(const AutoPtr& phi, const AlgElem& a);
AutoPtr compose(const AutoPtr& phi, const AutoPtr& psi);   // phi after psi
AutoPtr inverse(const AutoPtr& phi);
AutoPtr power(const AutoPtr& phi, long k);
bool auto_equal(const AutoPtr& phi, const AutoPtr& psi);
bool is_identity(const AutoPtr& phi);
// Empty when phi is a well-defined automorphism, else the violated relation.
std::optional<std::string> validate_auto(const AutoPtr& phi);

// Generators of the algebra as elements (s, t and t^-1, ..., y, x).
std::vector<AlgElem> algebra_generators(const AlgebraPtr& a);

// Diagonal description: phi(g) = lambda_g * g on every monomial basis element.
bool is_diagonal(const AutoPtr& phi);
// Eigenvalue of a diagonal automorphism on the flat basis element k.
Scalar eigenvalue(const AutoPtr& phi, int k);

// ------------------------------------------------------------ ambiskew ring

// R(A, alpha, v, rho): ya = alpha(a) y, xa = beta(a) x, xy = rho yx + v,
// with beta = alpha^-1 gamma.
struct Ring {
  std::string name;
  AlgebraPtr base;
  AutoPtr alpha, gamma, beta, beta_inv, alpha_inv;
  AlgElem v;
  Scalar rho;
  std::string xname = "x", yname = "y";

  // Memo of y^j x^k in normal form; coefficients live in `base`.
  mutable std::recursive_mutex memo_mutex;
  mutable std::map<std::pair<int, int>, std::vector<NTerm>> yx_memo;
  mutable std::vector<AlgElem> vm_cache;          // v^(m)
  mutable std::map<long, AutoPtr> beta_inv_pow;

  AlgElem vm(long m) const;
  AutoPtr beta_inv_power(long k) const;
};

}  // namespace ambiskew
