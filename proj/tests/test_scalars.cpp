#include <gtest/gtest.h>

#include <random>

#include "ambiskew/dsl.hpp"
#include "ambiskew/scalars.hpp"

using namespace ambiskew;

namespace {

struct Gen {
  std::mt19937 rng{11};
  long small(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

  // Random element of the context: a ratio of small polynomials in the
  // parameters with coefficients in Z[zeta].
  Scalar scalar(Ctx c, bool fractions = true) {
    auto poly = [&] {
      Scalar s(c, 0L);
      for (int t = 0; t < 3; ++t) {
        Scalar term(c, small(-4, 4));
        if (c->cyclotomic_order > 1) term *= Scalar::zeta(c).pow(small(0, c->cyclotomic_order - 1));
        for (const auto& p : c->parameters) term *= Scalar::param(c, p).pow(small(0, 2));
        s += term;
      }
      return s;
    };
    Scalar n = poly();
    if (!fractions) return n;
    Scalar d = poly();
    return d.is_zero() ? n : n / d;
  }
};

std::vector<Ctx> contexts() {
  return {ScalarContext::get(0, 1, {}),      ScalarContext::get(0, 5, {}),
          ScalarContext::get(0, 12, {}),     ScalarContext::get(0, 1, {"q"}),
          ScalarContext::get(0, 3, {"q", "r"}), ScalarContext::get(7, 1, {}),
          ScalarContext::get(5, 1, {"q"})};
}

}  // namespace

TEST(Scalars, FieldAxioms) {
  Gen g;
  for (Ctx c : contexts()) {
    Scalar zero(c, 0L), one(c, 1L);
    for (int i = 0; i < 60; ++i) {
      Scalar a = g.scalar(c), b = g.scalar(c), d = g.scalar(c);
      EXPECT_EQ((a + b) + d, a + (b + d));
      EXPECT_EQ((a * b) * d, a * (b * d));
      EXPECT_EQ(a + b, b + a);
      EXPECT_EQ(a * b, b * a);
      EXPECT_EQ(a * (b + d), a * b + a * d);
      EXPECT_EQ(a - a, zero);
      EXPECT_EQ(a + zero, a);
      EXPECT_EQ(a * one, a);
      if (!a.is_zero()) {
        EXPECT_TRUE((a * a.inv()).is_one()) << a.str();
        EXPECT_EQ(a.pow(-2) * a.pow(3), a);
      }
    }
  }
}

TEST(Scalars, RationalsMatchGmp) {
  Gen g;
  Ctx c = ScalarContext::get(0, 1, {});
  for (int i = 0; i < 200; ++i) {
    mpq_class a(g.small(-50, 50), g.small(1, 30)), b(g.small(-50, 50), g.small(1, 30));
    a.canonicalize();
    b.canonicalize();
    EXPECT_EQ((Scalar(c, a) * Scalar(c, b)).rational_value(), a * b);
    EXPECT_EQ((Scalar(c, a) - Scalar(c, b)).rational_value(), a - b);
    if (b != 0) EXPECT_EQ((Scalar(c, a) / Scalar(c, b)).rational_value(), a / b);
  }
}

TEST(Scalars, PrimeFieldMatchesModularArithmetic) {
  Gen g;
  for (long p : {2L, 3L, 7L, 101L}) {
    Ctx c = ScalarContext::get(p, 1, {});
    for (int i = 0; i < 100; ++i) {
      long a = g.small(-300, 300), b = g.small(-300, 300);
      auto mod = [p](long x) { return ((x % p) + p) % p; };
      EXPECT_EQ(Scalar(c, a) * Scalar(c, b), Scalar(c, mod(a * b)));
      EXPECT_EQ(Scalar(c, a) + Scalar(c, b), Scalar(c, mod(a + b)));
      EXPECT_EQ(Scalar(c, a).pow(p), Scalar(c, a));   // Fermat
    }
    EXPECT_TRUE(Scalar(c, p).is_zero());
  }
}

TEST(Scalars, ZetaRelations) {
  for (int N : {2, 3, 4, 5, 6, 8, 12}) {
    Ctx c = ScalarContext::get(0, N, {});
    Scalar z = Scalar::zeta(c);
    EXPECT_TRUE(z.pow(N).is_one()) << N;
    for (int k = 1; k < N; ++k) EXPECT_FALSE(z.pow(k).is_one()) << N << " " << k;
    // Sum of all N-th roots of unity vanishes.
    Scalar s(c, 0L);
    for (int k = 0; k < N; ++k) s += z.pow(k);
    EXPECT_TRUE(s.is_zero()) << N;
    EXPECT_EQ(z.inv(), z.pow(N - 1));
  }
  Ctx c4 = ScalarContext::get(0, 4, {});
  EXPECT_EQ(Scalar::zeta(c4).pow(2), Scalar(c4, -1L));
}

TEST(Scalars, RootOfUnityOrder) {
  auto order = [](const Scalar& s) {
    RootOrder r = root_of_unity_order(s);
    return r.kind == RootOrder::Finite ? r.order : 0L;
  };
  Ctx Q = ScalarContext::get(0, 1, {});
  EXPECT_EQ(order(Scalar(Q, 1L)), 1);
  EXPECT_EQ(order(Scalar(Q, -1L)), 2);
  EXPECT_EQ(order(Scalar(Q, 2L)), 0);
  EXPECT_EQ(order(Scalar(Q, mpq_class(1, 2))), 0);
  Ctx Q12 = ScalarContext::get(0, 12, {});
  Scalar z = Scalar::zeta(Q12);
  for (int k = 1; k <= 12; ++k) EXPECT_EQ(order(z.pow(k)), 12 / std::gcd(k, 12)) << k;
  EXPECT_EQ(order(-z.pow(4)), 6);
  EXPECT_EQ(order(z + Scalar(Q12, 1L)), 0);
  Ctx Qq = ScalarContext::get(0, 1, {"q"});
  EXPECT_EQ(order(Scalar::param(Qq, "q")), 0);
  // Brute-force order in GF(p).
  for (long p : {5L, 7L, 13L}) {
    Ctx c = ScalarContext::get(p, 1, {});
    for (long a = 1; a < p; ++a) {
      long k = 1;
      for (long x = a; x != 1; x = x * a % p) ++k;
      EXPECT_EQ(order(Scalar(c, a)), k) << a << " mod " << p;
    }
  }
}

TEST(Scalars, QIntegers) {
  Gen g;
  for (Ctx c : {ScalarContext::get(0, 1, {"q"}), ScalarContext::get(0, 6, {})}) {
    for (int i = 0; i < 10; ++i) {
      Scalar q = g.scalar(c);
      for (long m = 0; m <= 7; ++m) {
        Scalar s(c, 0L);
        for (long l = 0; l < m; ++l) s += q.pow(l);
        EXPECT_EQ(q_integer(m, q), s);
      }
    }
  }
  Ctx c = ScalarContext::get(0, 5, {});
  EXPECT_TRUE(q_integer(5, Scalar::zeta(c)).is_zero());
  EXPECT_FALSE(q_integer(4, Scalar::zeta(c)).is_zero());
}

TEST(Scalars, PositiveIntegerSolutions) {
  Ctx Q = ScalarContext::get(0, 1, {});
  Ctx Qq = ScalarContext::get(0, 1, {"q"});
  auto sol = positive_integer_solution(Scalar(Q, 2L), Scalar(Q, -6L));
  EXPECT_FALSE(sol.all);
  EXPECT_EQ(sol.values, std::vector<long>{3});
  EXPECT_TRUE(positive_integer_solution(Scalar(Q, 2L), Scalar(Q, 6L)).values.empty());
  EXPECT_TRUE(positive_integer_solution(Scalar(Q, 2L), Scalar(Q, -5L)).values.empty());
  EXPECT_TRUE(positive_integer_solution(Scalar(Q, 0L), Scalar(Q, 0L)).all);
  EXPECT_TRUE(positive_integer_solution(Scalar(Q, 0L), Scalar(Q, 1L)).values.empty());
  Scalar q = Scalar::param(Qq, "q");
  EXPECT_TRUE(positive_integer_solution(q, Scalar(Qq, -3L) * q).values == std::vector<long>{3});
  EXPECT_TRUE(positive_integer_solution(q, Scalar(Qq, -3L)).values.empty());
}

TEST(Scalars, TextRoundTrip) {
  Gen g;
  for (Ctx c : contexts()) {
    for (int i = 0; i < 50; ++i) {
      Scalar a = g.scalar(c);
      EXPECT_EQ(dsl::eval_scalar(*dsl::parse_expr(a.str()), c), a) << a.str();
    }
  }
}
