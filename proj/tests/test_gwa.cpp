#include <gtest/gtest.h>

#include <random>

#include "ambiskew/gwa.hpp"
#include "oracle.hpp"

using namespace ambiskew;

namespace {

Ctx Q() { return ScalarContext::get(0, 1, {}); }
Scalar rat(Ctx c, long n, long d = 1) { return Scalar(c, mpq_class(n, d)); }

// A_1 presented as T(F[t], t -> t - 1, t).
GwaPtr weyl_gwa(Ctx c) {
  auto A = make_poly(c);
  return make_gwa("T", A, auto_affine(A, rat(c, 1), rat(c, -1)), generator(A));
}

GwaElement random_element(const GwaPtr& t, std::mt19937& rng) {
  std::uniform_int_distribution<int> deg(-2, 2), coef(-3, 3), pw(0, 2);
  GwaElement f = gwa_zero(t);
  for (int k = 0; k < 3; ++k) {
    AlgElem c = zero(t->base);
    for (int e = 0; e <= 1; ++e) {
      AlgElem g = e ? generator(t->base) : one(t->base);
      c = c + rat(t->base->ctx, coef(rng)) * pow(g, pw(rng));
    }
    f = f + gwa_term(t, deg(rng), c);
  }
  return f;
}

}  // namespace

TEST(Gwa, WeylRelation) {
  auto t = weyl_gwa(Q());
  GwaElement X = gwa_X(t), Y = gwa_Y(t);
  EXPECT_EQ(X * Y, gwa_const(t, t->u));
  EXPECT_EQ(Y * X, gwa_const(t, apply_auto(t->alpha, t->u)));
  EXPECT_EQ(X * Y - Y * X, gwa_const(t, one(t->base)));
}

TEST(Gwa, PowerProducts) {
  Ctx c = ScalarContext::get(0, 1, {"q"});
  auto A = make_laurent(c);
  auto t = make_gwa("T", A, auto_scale(A, Scalar::param(c, "q")), generator(A) + one(A));
  for (int m = 1; m <= 6; ++m) {
    AlgElem xy = one(A), yx = one(A);
    for (int i = 0; i < m; ++i) xy = xy * apply_auto(power(t->alpha, -i), t->u);
    for (int i = 1; i <= m; ++i) yx = yx * apply_auto(power(t->alpha, i), t->u);
    EXPECT_EQ(gwa_X(t, m) * gwa_Y(t, m), gwa_const(t, xy)) << m;
    EXPECT_EQ(gwa_Y(t, m) * gwa_X(t, m), gwa_const(t, yx)) << m;
  }
}

TEST(Gwa, AlphaImagesOfUCommute) {
  Ctx c = Q();
  auto A = make_cyclic(ScalarContext::get(0, 4, {}), 4, Scalar::zeta(ScalarContext::get(0, 4, {})));
  auto t = make_gwa("T", A, auto_scale(A, A->eps), generator(A) + scalar(A, rat(A->ctx, 2)));
  for (int i = -4; i <= 4; ++i)
    for (int j = -4; j <= 4; ++j) {
      AlgElem a = apply_auto(power(t->alpha, i), t->u), b = apply_auto(power(t->alpha, j), t->u);
      EXPECT_EQ(a * b, b * a);
    }
  (void)c;
}

TEST(Gwa, Associativity) {
  std::mt19937 rng(11);
  auto t = weyl_gwa(Q());
  for (int k = 0; k < 200; ++k) {
    auto f = random_element(t, rng), g = random_element(t, rng), h = random_element(t, rng);
    ASSERT_EQ((f * g) * h, f * (g * h));
  }
}

TEST(Gwa, GradingOfHomogeneousProducts) {
  std::mt19937 rng(5);
  auto t = weyl_gwa(Q());
  for (int d = -3; d <= 3; ++d)
    for (int e = -3; e <= 3; ++e) {
      auto p = gwa_term(t, d, generator(t->base)) * gwa_term(t, e, one(t->base));
      for (const auto& [deg, c] : p.terms) EXPECT_EQ(deg, d + e);
    }
}

TEST(Gwa, CasimirMapsToZero) {
  Ctx c = ScalarContext::get(0, 1, {"q"});
  auto F = make_field(c);
  AmbiskewSpec s;
  s.base = F;
  s.alpha = auto_identity(F);
  s.v = one(F);
  s.rho = Scalar::param(c, "q");
  auto R = construct(s);
  auto t = gwa_from_ambiskew(R);
  Scalar q = Scalar::param(c, "q");
  EXPECT_EQ(t->u, scalar(F, (rat(c, 1) - q).inv()));
  AlgElem z = r_mul(gen_x(R), gen_y(R)) - embed(R, t->u);
  EXPECT_TRUE(gwa_image(t, z).is_zero());
  // Any multiple of z also dies.
  AlgElem w = r_mul(r_mul(gen_y(R), z), gen_x(R));
  EXPECT_TRUE(gwa_image(t, w).is_zero());
}

TEST(Gwa, WeylPresentationSimpleInCharZero) {
  auto v = gwa_simple(weyl_gwa(Q()));
  EXPECT_TRUE(v.is_holds()) << v.to_json().dump();
}

TEST(Gwa, IdentityOverFieldFailsOuter) {
  Ctx c = Q();
  auto F = make_field(c);
  auto v = gwa_simple(make_gwa("T", F, auto_identity(F), one(F)));
  ASSERT_TRUE(v.is_fails());
  EXPECT_EQ(v.failed_condition, "outer");
  EXPECT_EQ(v.certificate["m"], 1);
}

TEST(Gwa, ShiftInCharPFailsAlphaSimple) {
  Ctx c = ScalarContext::get(7, 1, {});
  auto A = make_poly(c);
  auto v = gwa_simple(make_gwa("T", A, auto_affine(A, rat(c, 1), rat(c, 1)), generator(A)));
  ASSERT_TRUE(v.is_fails());
  EXPECT_EQ(v.failed_condition, "alpha_simple");
  EXPECT_EQ(v.certificate["generator"], to_string(pow(generator(A), 7) - generator(A)));
}

TEST(Gwa, SharedRootsFailComaximality) {
  Ctx c = Q();
  auto A = make_poly(c);
  auto t = generator(A);
  // u = t(t - 3): roots differ by 3.
  auto T = make_gwa("T", A, auto_affine(A, rat(c, 1), rat(c, 1)), t * (t - scalar(A, rat(c, 3))));
  auto v = gwa_simple(T);
  ASSERT_TRUE(v.is_fails());
  EXPECT_EQ(v.failed_condition, "comaximal");
  EXPECT_EQ(v.certificate["m"], 3);
}
