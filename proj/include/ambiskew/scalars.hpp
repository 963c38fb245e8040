#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ambiskew {

class MathError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Prime field F_p (p > 0) or cyclotomic field Q(zeta_N) (p == 0).
// Instances are interned and live for the whole process.
struct BaseField {
  long p = 0;
  int N = 1;
  int phi = 1;
  std::vector<mpq_class> cyclo;               // Phi_N, low degree first, monic
  std::vector<std::vector<mpq_class>> xpow;   // x^k mod Phi_N for k < 2*phi

  static const BaseField* get(long p, int N);
};

// Element of the coefficient field K0.
class Cyc {
 public:
  const BaseField* f = nullptr;
  std::vector<mpq_class> c;

  Cyc() = default;
  explicit Cyc(const BaseField* field);
  Cyc(const BaseField* field, const mpq_class& r);
  static Cyc zeta(const BaseField* field);

  bool is_zero() const;
  bool is_one() const;
  bool is_rational() const;   // lies in the prime field
  const mpq_class& rational() const { return c[0]; }

  Cyc operator+(const Cyc& o) const;
  Cyc operator-(const Cyc& o) const;
  Cyc operator-() const;
  Cyc operator*(const Cyc& o) const;
  Cyc inv() const;
  Cyc pow(long e) const;
  bool operator==(const Cyc& o) const { return c == o.c; }
  bool operator!=(const Cyc& o) const { return !(*this == o); }
  bool operator<(const Cyc& o) const { return c < o.c; }

  std::string str() const;

 private:
  void reduce_p();
};

struct ScalarContext {
  long characteristic = 0;
  int cyclotomic_order = 1;
  std::vector<std::string> parameters;
  bool rational_relation_mode = true;
  const BaseField* field = nullptr;

  size_t nvars() const { return parameters.size(); }
  int param_index(const std::string& name) const;

  // Interned: equal declarations give the same pointer.
  static const ScalarContext* get(long characteristic, int N,
                                  const std::vector<std::string>& params);
};
using Ctx = const ScalarContext*;

using Mono = std::vector<int>;

// Graded lexicographic order on exponent vectors.
struct GrlexLess {
  bool operator()(const Mono& a, const Mono& b) const;
};

class MPoly {
 public:
  Ctx ctx = nullptr;
  std::map<Mono, Cyc, GrlexLess> terms;

  MPoly() = default;
  explicit MPoly(Ctx c) : ctx(c) {}
  static MPoly constant(Ctx c, const Cyc& v);
  static MPoly var(Ctx c, size_t i, int e = 1);

  bool is_zero() const { return terms.empty(); }
  bool is_constant() const;
  bool is_monomial() const { return terms.size() == 1; }
  Cyc constant_value() const;
  const Mono& lead_mono() const { return terms.rbegin()->first; }
  const Cyc& lead_coeff() const { return terms.rbegin()->second; }
  int degree_in(size_t v) const;
  std::vector<MPoly> coeffs_in(size_t v) const;
  static MPoly from_coeffs(Ctx c, size_t v, const std::vector<MPoly>& cs);

  MPoly operator+(const MPoly& o) const;
  MPoly operator-(const MPoly& o) const;
  MPoly operator-() const;
  MPoly operator*(const MPoly& o) const;
  MPoly scaled(const Cyc& k) const;
  MPoly shifted(const Mono& m) const;
  MPoly pow(unsigned e) const;
  bool operator==(const MPoly& o) const { return terms == o.terms; }
  bool operator!=(const MPoly& o) const { return !(*this == o); }

  MPoly monic() const;
  std::optional<MPoly> divide_exact(const MPoly& b) const;
  static MPoly gcd(const MPoly& a, const MPoly& b);

  std::string str() const;
  void add_term(const Mono& m, const Cyc& v);

 private:
  Mono zero_mono() const { return Mono(ctx->nvars(), 0); }
};

// Element of K = K0(p_1, ..., p_k) as a reduced fraction.
class Scalar {
 public:
  MPoly num, den;

  Scalar() = default;
  explicit Scalar(Ctx c);
  Scalar(Ctx c, long v);
  Scalar(Ctx c, const mpq_class& v);
  Scalar(Ctx c, const Cyc& v);
  static Scalar zeta(Ctx c);
  static Scalar param(Ctx c, const std::string& name);
  static Scalar from_fraction(const MPoly& n, const MPoly& d);

  Ctx ctx() const { return num.ctx; }
  bool is_zero() const { return num.is_zero(); }
  bool is_one() const;
  bool is_constant() const { return num.is_constant() && den.is_constant(); }
  bool is_rational() const;
  Cyc constant_value() const;
  mpq_class rational_value() const;

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator-() const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar inv() const;
  Scalar pow(long e) const;
  bool operator==(const Scalar& o) const { return num == o.num && den == o.den; }
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  // Text form accepted back by the DSL scalar grammar.
  std::string str() const;

 private:
  void canonicalize(bool reduce = true);
};

inline std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

struct RootOrder {
  enum Kind { Finite, Infinite } kind = Infinite;
  long order = 0;
};

RootOrder root_of_unity_order(const Scalar& c);
Scalar q_integer(long m, const Scalar& q);

struct IntegerSolutions {
  bool all = false;
  std::vector<long> values;
};
// Positive integers m with m*a + b == 0 (characteristic 0).
IntegerSolutions positive_integer_solution(const Scalar& a, const Scalar& b);

bool lucas_binomial_nonzero(unsigned long n, unsigned long r, unsigned long p);

// c = zeta_M^k * prod prime^e * prod param^f, when such a form is decidable.
// M = lcm(2, N) in characteristic 0 and p - 1 in characteristic p.
struct MultDecomposition {
  long torsion_exp = 0;
  long torsion_modulus = 1;
  std::map<std::string, mpz_class> exps;   // "p:<name>" or "q:<prime>"
};
std::optional<MultDecomposition> multiplicative_decompose(const Scalar& c);

}  // namespace ambiskew
