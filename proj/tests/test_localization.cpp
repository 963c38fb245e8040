#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "ambiskew/lattice.hpp"
#include "ambiskew/localization.hpp"

using namespace ambiskew;

namespace {

AlgebraPtr ring(AlgebraPtr A, AutoPtr alpha, AlgElem v, Scalar rho) {
  AmbiskewSpec s;
  s.base = A;
  s.alpha = alpha;
  s.v = v;
  s.rho = rho;
  return construct(s);
}

Scalar rat(Ctx c, long n, long d = 1) { return Scalar(c, mpq_class(n, d)); }

TorusMatrix four_by_four(Ctx c) {
  long up[4][4] = {{1, 1, 2, 3}, {1, 1, 5, 7}, {0, 0, 1, 11}, {0, 0, 0, 1}};
  TorusMatrix q(4, std::vector<Scalar>(4));
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j) {
      q[i][j] = rat(c, up[i][j]);
      q[j][i] = q[i][j].inv();
    }
  return q;
}

}  // namespace

TEST(Lattice, KernelOfSingleRow) {
  auto ker = integer_kernel({{2, 3, 5}}, 3);
  ASSERT_EQ(ker.size(), 2u);
  for (const auto& v : ker) EXPECT_EQ(2 * v[0] + 3 * v[1] + 5 * v[2], 0);
}

TEST(Lattice, FullRankHasTrivialKernel) {
  EXPECT_TRUE(integer_kernel({{1, 2}, {3, 4}}, 2).empty());
}

TEST(Localization, QuantumPlaneGenericIsSimple) {
  Ctx c = ScalarContext::get(0, 1, {"q"});
  auto F = make_field(c);
  auto R = ring(F, auto_identity(F), zero(F), Scalar::param(c, "q"));
  EXPECT_TRUE(localized_simple(R).is_holds());
}

TEST(Localization, QuantumPlaneRootOfUnityFails) {
  Ctx c = ScalarContext::get(0, 5, {});
  auto F = make_field(c);
  auto R = ring(F, auto_identity(F), zero(F), Scalar::zeta(c));
  auto v = localized_simple(R);
  ASSERT_TRUE(v.is_fails()) << v.to_json().dump();
  EXPECT_EQ(v.failed_condition, "special");
  EXPECT_EQ(v.certificate["m"].get<long>() % 5, 0);
}

TEST(Localization, QuantumWeylAtCubeRootHasSpecialOne) {
  Ctx c = ScalarContext::get(0, 3, {});
  auto F = make_field(c);
  auto R = ring(F, auto_identity(F), one(F), Scalar::zeta(c));
  auto v = localized_simple(R);
  ASSERT_TRUE(v.is_fails()) << v.to_json().dump();
  EXPECT_EQ(v.certificate["c"], "1");
}

TEST(Localization, HeisenbergRationalParametersHaveNoSpecial) {
  Ctx c = ScalarContext::get(0, 1, {});
  auto A = make_laurent(c);
  auto s = special_element_search(A, auto_scale(A, rat(c, 2)), auto_identity(A), rat(c, 3),
                                  SpecialMode::ZeroMOnly);
  EXPECT_EQ(s.status, Status::Fails);
}

TEST(Localization, RemarkRootOfUnityRho) {
  Ctx c = ScalarContext::get(0, 1, {});
  auto A = make_laurent(c);
  auto s = special_element_search(A, auto_scale(A, rat(c, 2)), auto_identity(A), rat(c, -1),
                                  SpecialMode::All);
  ASSERT_EQ(s.status, Status::Holds);
  EXPECT_TRUE(is_special(auto_scale(A, rat(c, 2)), auto_identity(A), rat(c, -1), *s.found));
}

TEST(Localization, HeisenbergLocalization) {
  Ctx c = ScalarContext::get(0, 1, {"q", "r"});
  auto A = make_laurent(c);
  Scalar q = Scalar::param(c, "q"), r = Scalar::param(c, "r");
  auto gen = ring(A, auto_scale(A, q), generator(A), r);
  EXPECT_TRUE(localized_simple(gen).is_holds());
  auto same = ring(A, auto_scale(A, q), generator(A), q);
  auto v = localized_simple(same);
  ASSERT_TRUE(v.is_fails()) << v.to_json().dump();
  EXPECT_EQ(v.certificate["c"], "t^-1");
}

TEST(Localization, SmithAlgebraNonConstantVFails) {
  Ctx c = ScalarContext::get(0, 1, {});
  auto A = make_poly(c);
  auto t = generator(A);
  auto R = ring(A, auto_affine(A, rat(c, 1), rat(c, 1)), t, rat(c, 2));
  auto v = localized_simple(R);
  ASSERT_TRUE(v.is_fails()) << v.to_json().dump();
  EXPECT_EQ(v.failed_condition, "radical");
}

TEST(Localization, SmithAlgebraConstantV) {
  Ctx c = ScalarContext::get(0, 1, {});
  auto A = make_poly(c);
  auto R = ring(A, auto_affine(A, rat(c, 1), rat(c, 1)), one(A), rat(c, 2));
  EXPECT_TRUE(localized_simple(R).is_holds()) << localized_simple(R).to_json().dump();
  auto R1 = ring(A, auto_affine(A, rat(c, 1), rat(c, 1)), one(A), rat(c, -1));
  EXPECT_TRUE(localized_simple(R1).is_fails());
}

TEST(Torus, FourByFourIsSimple) {
  Ctx c = ScalarContext::get(0, 1, {});
  auto q = four_by_four(c);
  EXPECT_TRUE(quantum_torus_simple(q).is_holds());
  TorusMatrix block{{q[0][0], q[0][1]}, {q[1][0], q[1][1]}};
  auto v = quantum_torus_simple(block);
  ASSERT_TRUE(v.is_fails());
}

TEST(Torus, RootOfUnityEntry) {
  Ctx c = ScalarContext::get(0, 6, {});
  Scalar z = Scalar::zeta(c);
  auto v = quantum_torus_simple({{rat(c, 1), z}, {z.inv(), rat(c, 1)}});
  ASSERT_TRUE(v.is_fails());
  auto m = v.certificate["m"];
  EXPECT_TRUE(z.pow(m[1].get<long>()).is_one());
}

TEST(Torus, ParameterEntry) {
  Ctx c = ScalarContext::get(0, 1, {"q"});
  Scalar q = Scalar::param(c, "q");
  EXPECT_TRUE(quantum_torus_simple({{rat(c, 1), q}, {q.inv(), rat(c, 1)}}).is_holds());
}

TEST(Torus, PermutationInvariant) {
  Ctx c = ScalarContext::get(0, 1, {});
  auto q = four_by_four(c);
  std::vector<int> perm(4);
  std::iota(perm.begin(), perm.end(), 0);
  std::mt19937 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    std::shuffle(perm.begin(), perm.end(), rng);
    TorusMatrix p(4, std::vector<Scalar>(4));
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) p[i][j] = q[perm[i]][perm[j]];
    EXPECT_TRUE(quantum_torus_simple(p).is_holds());
  }
}
