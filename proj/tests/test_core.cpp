#include <gtest/gtest.h>

#include "ambiskew/ambiskew.hpp"
#include "ambiskew/simplicity.hpp"
#include "oracle.hpp"

using namespace ambiskew;

namespace {

Ctx Q() { return ScalarContext::get(0, 1, {}); }
Ctx Qq() { return ScalarContext::get(0, 1, {"q"}); }

AlgebraPtr ring(AlgebraPtr A, AutoPtr alpha, AlgElem v, Scalar rho) {
  AmbiskewSpec s;
  s.base = A;
  s.alpha = alpha;
  s.v = v;
  s.rho = rho;
  return construct(s);
}

// Weyl algebra over Q as R(F, id, 1, 1).
AlgebraPtr weyl(Ctx c) {
  auto F = make_field(c);
  return ring(F, auto_identity(F), one(F), Scalar(c, 1L));
}

}  // namespace

TEST(Core, WeylRelation) {
  auto W = weyl(Q());
  AlgElem x = gen_x(W), y = gen_y(W);
  EXPECT_EQ(r_mul(x, y) - r_mul(y, x), one(W));
}

TEST(Core, YxMatchesRewriting) {
  Ctx c = Qq();
  auto A = make_laurent(c);
  Scalar q = Scalar::param(c, "q");
  auto R = ring(A, auto_scale(A, q), generator(A) + one(A), Scalar(c, 2L));
  AlgElem x = gen_x(R), y = gen_y(R);
  AlgElem f = r_mul(r_mul(y, y), embed(R, generator(A))) + x;
  AlgElem g = r_mul(x, x) + r_mul(y, x);
  EXPECT_EQ(r_mul(f, g), oracle::word_product(f, g));
  EXPECT_EQ(r_mul(g, f), oracle::word_product(g, f));
}

TEST(Core, WeylSimple) {
  auto v = ring_simple(weyl(Q()));
  EXPECT_TRUE(v.is_holds()) << v.to_json().dump();
}

TEST(Core, QuantumWeylNotSimple) {
  Ctx c = Qq();
  auto F = make_field(c);
  Scalar q = Scalar::param(c, "q");
  auto R = ring(F, auto_identity(F), one(F), q);
  auto v = ring_simple(R);
  EXPECT_TRUE(v.is_fails()) << v.to_json().dump();
  EXPECT_EQ(v.failed_condition, "singular");
}

TEST(Core, WeylModPNotSimple) {
  Ctx c = ScalarContext::get(5, 1, {});
  auto v = ring_simple(weyl(c));
  EXPECT_TRUE(v.is_fails()) << v.to_json().dump();
  bool units = false, charp = false;
  for (const auto& cond : v.conditions) {
    if (cond.name == "units_all_m") units = cond.status == Status::Fails;
    if (cond.name == "charp_condition") charp = cond.status == Status::Fails;
  }
  EXPECT_TRUE(units);
  EXPECT_TRUE(charp);
}
