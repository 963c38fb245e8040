#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "ambiskew/coeff.hpp"
#include "ambiskew/report.hpp"
#include "ambiskew/simplicity.hpp"

using namespace ambiskew;
namespace fs = std::filesystem;

namespace {

std::vector<fs::path> catalog() {
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(AMBISKEW_CATALOG_DIR))
    if (e.path().extension() == ".ask") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

// Message of the DslError thrown by parsing `text`, or "" when it parses.
std::string error_of(const std::string& text) {
  try {
    dsl::parse_spec(text);
  } catch (const dsl::DslError& e) {
    return e.what();
  }
  return "";
}

Report first_report(const std::string& text) {
  auto doc = dsl::parse_spec(text);
  auto rs = run_checks(doc, Bounds{});
  EXPECT_FALSE(rs.empty());
  return rs.front();
}

const char* kQuickstart = R"(# Weyl
field Q
base F = field()
ring R = ambiskew(F, id, v = 1, rho = 1)
check simple(R)
)";

const char* kQWeyl = R"(field Q[q]
base F = field()
ring A = ambiskew(F, id, v = 1, rho = q)
check conformal(A)
)";

}  // namespace

// ------------------------------------------------------------ parsing

TEST(Parse, Quickstart) {
  auto doc = dsl::parse_spec(kQuickstart);
  ASSERT_EQ(doc.statements.size(), 4u);
  ASSERT_EQ(doc.checks().size(), 1u);
  EXPECT_EQ(doc.checks()[0]->target, "R");
  EXPECT_EQ(doc.checks()[0]->span.line, 5);
  EXPECT_EQ(doc.env.last_ring, "R");
}

TEST(Parse, RhoZeroIsSemanticError) {
  std::string e = error_of("field Q\nbase F = field()\nring R = ambiskew(F, id, v = 1, rho = 0)\n");
  EXPECT_NE(e.find("rho must be nonzero"), std::string::npos) << e;
  EXPECT_EQ(e.rfind("3:", 0), 0u) << e;
}

TEST(Parse, ErrorsCarryLineAndColumn) {
  EXPECT_EQ(error_of("field Q\nbase A = laurent(t) $\n"), "2:21: unexpected character '$'");
  EXPECT_EQ(error_of("field Q\nbase A = laurent(t\n"), "3:1: expected ')', found end of input");
  EXPECT_EQ(error_of("field Q\nring R = ambiskew(B, id, v = 1, rho = 1)\n"), "2:19: unknown algebra 'B'");
  EXPECT_EQ(error_of("base A = laurent(t)\nfield Q\n"),
            "2:1: the field declaration must come before every other statement");
  EXPECT_EQ(error_of("field Q\nfrobnicate\n"), "2:1: unknown statement 'frobnicate'");
}

TEST(Parse, AutomorphismsAreValidated) {
  // s -> 2s does not preserve s^4 = 1.
  std::string e = error_of("field Q(zeta_4)\nbase C = cyclic_group(s, n = 4, epsilon = zeta)\n"
                           "auto a on C { s -> 2*s }\n");
  EXPECT_EQ(e.rfind("3:", 0), 0u) << e;
  // Poly images must be affine.
  e = error_of("field Q\nbase P = poly(t)\nauto a on P { t -> t^2 }\n");
  EXPECT_NE(e.find("lambda*t + c"), std::string::npos) << e;
  e = error_of("field Q\nbase P = poly(t)\nauto a on P { u -> t }\n");
  EXPECT_NE(e.find("'u' is not a generator"), std::string::npos) << e;
}

TEST(Parse, PrimitiveRootIsChecked) {
  std::string e = error_of("field Q(zeta_4)\nbase C = cyclic_group(s, n = 4, epsilon = -1)\n");
  EXPECT_EQ(e.rfind("2:", 0), 0u) << e;
}

TEST(Parse, NamesAreScoped) {
  // Sibling rings reuse x and y; a ring may not reuse a generator below it.
  EXPECT_EQ(error_of("field Q\nbase F = field()\nring R = ambiskew(F, id, v = 1, rho = 1)\n"
                     "ring S = ambiskew(F, id, v = 1, rho = 2)\n"),
            "");
  std::string e = error_of("field Q\nbase F = field()\nring R = ambiskew(F, id, v = 1, rho = 1)\n"
                           "ring S = ambiskew(R, id, v = 1, rho = 1)\n");
  EXPECT_NE(e.find("already used in R"), std::string::npos) << e;
  e = error_of("field Q[q]\nbase A = laurent(q)\n");
  EXPECT_NE(e.find("clashes with a scalar"), std::string::npos) << e;
}

TEST(Parse, NestedCyclicDocument) {
  auto doc = dsl::parse_spec(R"(field Q(zeta_4)[lambda]
base C = cyclic_group(s, n = 4, epsilon = zeta)
auto a1 on C { s -> zeta*s }
ring R1 = ambiskew(C, a1, v = s + 2*s^3, rho = zeta, y = y1, x = x1)
auto a2 on R1 { s -> -s, y1 -> lambda*y1, x1 -> -lambda^-1*x1 }
ring R2 = ambiskew(R1, a2, v = s + 2*s^3, rho = -1, y = y2, x = x2)
)");
  auto R2 = doc.env.algebras.at("R2");
  EXPECT_EQ(tower(R2).size(), 3u);
}

TEST(Parse, ExpressionPrinterRoundTrips) {
  for (const char* src : {"1 - (2 - 3)", "-(a + b)*c", "a/(b*c)", "(a^2)^3", "-a^-2", "a - -b",
                          "2*s^3 + lambda^-1*x1*y1", "(1 - q)^-1", "a*(b/c)", "-(-a)"}) {
    auto e = dsl::parse_expr(src);
    auto back = dsl::parse_expr(dsl::print_expr(*e));
    EXPECT_TRUE(*e == *back) << src << " -> " << dsl::print_expr(*e);
  }
}

TEST(Parse, RandomExpressionsRoundTrip) {
  std::mt19937 rng(3);
  std::function<dsl::ExprPtr(int)> gen = [&](int depth) {
    auto e = std::make_shared<dsl::Expr>();
    int k = depth == 0 ? static_cast<int>(rng() % 2) : static_cast<int>(rng() % 8);
    if (k == 0) {
      e->kind = dsl::Expr::Num;
      e->text = std::to_string(rng() % 10);
    } else if (k == 1) {
      e->kind = dsl::Expr::Ident;
      e->text = std::string(1, static_cast<char>('a' + rng() % 3));
    } else if (k == 2) {
      e->kind = dsl::Expr::Neg;
      e->args = {gen(depth - 1)};
    } else if (k == 7) {
      e->kind = dsl::Expr::Pow;
      e->args = {gen(depth - 1)};
      e->exponent = static_cast<long>(rng() % 7) - 3;
    } else {
      e->kind = static_cast<dsl::Expr::Kind>(dsl::Expr::Add + (k - 3));
      e->args = {gen(depth - 1), gen(depth - 1)};
    }
    return e;
  };
  for (int i = 0; i < 300; ++i) {
    auto e = gen(4);
    std::string s = dsl::print_expr(*e);
    EXPECT_TRUE(*dsl::parse_expr(s) == *e) << s;
  }
}

TEST(Parse, CatalogRoundTrips) {
  for (const auto& f : catalog()) {
    auto doc = dsl::parse_file(f.string());
    std::string printed = dsl::print_spec(doc);
    auto again = dsl::parse_spec(printed, f.parent_path().string());
    EXPECT_TRUE(dsl::same_statements(doc, again)) << f << "\n" << printed;
    EXPECT_EQ(dsl::print_spec(again), printed) << f;
  }
}

TEST(Eval, NormalForms) {
  auto doc = dsl::parse_spec(kQWeyl);
  auto A = doc.env.algebras.at("A");
  Ctx c = doc.env.ctx;
  auto nf = [&](const char* e) { return to_string(dsl::eval_element(*dsl::parse_expr(e), A, c)); };
  EXPECT_EQ(nf("x*y - q*y*x"), "1");
  EXPECT_EQ(nf("x*y*y - q^2*y*y*x"), nf("(1 + q)*y"));
  EXPECT_EQ(nf("(x + y)^2"), nf("x^2 + x*y + y*x + y^2"));
}

TEST(Eval, GwaQuotient) {
  auto doc = dsl::parse_spec("field Q[q]\nbase F = field()\nring A = ambiskew(F, id, v = 1, rho = q)\n"
                             "ring T = quotient_by_casimir(A)\n");
  auto t = doc.env.gwas.at("T");
  Ctx c = doc.env.ctx;
  auto nf = [&](const char* e) { return to_string(dsl::eval_gwa(*dsl::parse_expr(e), t, c)); };
  EXPECT_EQ(nf("X*Y"), to_string(gwa_const(t, t->u)));
  EXPECT_EQ(nf("X*Y - q*Y*X"), "1");
}

TEST(Eval, ElementStringsParseBack) {
  // Certificates store elements as text; parse(to_string(a)) must give a back.
  auto doc = dsl::parse_spec(R"(field Q(zeta_4)[q]
base C = cyclic_group(s, n = 4, epsilon = zeta)
base L = laurent(t)
auto a on L { t -> q*t }
ring U = ambiskew(L, a, v = t, rho = q, y = y, x = x)
)");
  Ctx c = doc.env.ctx;
  for (const char* e : {"(1 - q)^-1*s + zeta*s^3 - 1/7", "zeta^3*s^2 + q/(q + 1)"}) {
    auto C = doc.env.algebras.at("C");
    AlgElem a = dsl::eval_element(*dsl::parse_expr(e), C, c);
    EXPECT_EQ(dsl::parse_element(to_string(a), C), a) << to_string(a);
  }
  auto U = doc.env.algebras.at("U");
  AlgElem f = dsl::eval_element(*dsl::parse_expr("x^2*t^-3*y + (q^2 - 1)*y*t*x - 2/q"), U, c);
  EXPECT_EQ(dsl::parse_element(to_string(f), U), f) << to_string(f);
}

// ------------------------------------------------------------ reports

TEST(Report, ConformalQuantizedWeyl) {
  Report r = first_report(kQWeyl);
  ASSERT_TRUE(r.verdict.is_holds());
  auto doc = dsl::parse_spec(kQWeyl);
  auto F = ring_of(doc.env.algebras.at("A")).base;
  AlgElem u = dsl::parse_element(r.verdict.certificate["u"].get<std::string>(), F);
  EXPECT_EQ(u, dsl::parse_element("(1 - q)^-1", F));
  EXPECT_TRUE(verify_certificate(r));
}

TEST(Report, TamperedCertificatesAreRejected) {
  Report r = first_report(kQWeyl);
  Report bad = r;
  bad.verdict.certificate["u"] = r.verdict.certificate["u"].get<std::string>() + " + 1";
  EXPECT_FALSE(verify_certificate(bad));
}

TEST(Report, NonunitAtFifthRoot) {
  // q-Weyl at zeta_5: the units condition fails at m = 5 since [5]_q = 0.
  Report r = first_report("field Q(zeta_5)\nbase F = field()\nring A = ambiskew(F, id, v = 1, rho = zeta)\n"
                          "check simple(A)\n");
  const ConditionResult* units = nullptr;
  for (const auto& c : r.verdict.conditions)
    if (c.name == "units_all_m") units = &c;
  ASSERT_NE(units, nullptr);
  ASSERT_EQ(units->status, Status::Fails);
  EXPECT_EQ(units->certificate["m"], 5);
  Report only = r;
  only.verdict = Verdict::fails("units_all_m", units->certificate);
  EXPECT_TRUE(verify_certificate(only));
  only.verdict.certificate["m"] = 4;
  EXPECT_FALSE(verify_certificate(only));
}

TEST(Report, CatalogCertificatesVerify) {
  size_t decided = 0;
  for (const auto& f : catalog()) {
    auto doc = dsl::parse_file(f.string());
    for (const auto& r : run_checks(doc, Bounds{})) {
      EXPECT_TRUE(r.error.empty()) << f << ": " << r.error;
      EXPECT_FALSE(r.verdict.is_inconclusive()) << f << " line " << r.line << ": " << r.verdict.reason;
      if (r.verdict.is_inconclusive()) continue;
      ++decided;
      EXPECT_TRUE(verify_certificate(r)) << f << " line " << r.line << "\n"
                                         << r.verdict.certificate.dump();
    }
  }
  EXPECT_GE(decided, 50u);
}

TEST(Report, TamperedSpecialElementIsRejected) {
  // q-Weyl at zeta_3 after localization: (0, -3) is special, (0, -2) is not.
  Report r = first_report("field Q(zeta_3)\nbase F = field()\nring A = ambiskew(F, id, v = 1, rho = zeta)\n"
                          "check localized_simple(A)\n");
  ASSERT_TRUE(r.verdict.is_fails());
  ASSERT_EQ(r.verdict.certificate["kind"], "special");
  EXPECT_TRUE(verify_certificate(r));
  r.verdict.certificate["j"] = r.verdict.certificate["j"].get<long>() + 1;
  EXPECT_FALSE(verify_certificate(r));
}

TEST(Report, TamperedTorusRelationIsRejected) {
  // q_12 = -1: the centre is 2Z x 2Z, so bumping either coordinate of a
  // central vector leaves it non-central.
  fs::path dir = fs::temp_directory_path() / "ambiskew_test_dsl";
  fs::create_directories(dir);
  std::ofstream(dir / "minus.csv") << "1, -1\n-1, 1\n";
  auto doc = dsl::parse_spec("field Q\ncheck torus(minus.csv)\n", dir.string());
  Report r = run_checks(doc, Bounds{}).front();
  ASSERT_TRUE(r.verdict.is_fails());
  EXPECT_TRUE(verify_certificate(r));
  json m = r.verdict.certificate["m"];
  for (size_t i = 0; i < m.size(); ++i) {
    Report bad = r;
    bad.verdict.certificate["m"][i] = m[i].get<long>() + 1;
    EXPECT_FALSE(verify_certificate(bad)) << bad.verdict.certificate.dump();
  }
}

TEST(Report, DeterministicAcrossJobs) {
  for (const auto& f : catalog()) {
    auto doc = dsl::parse_file(f.string());
    Bounds b;
    std::string one = reports_json(run_checks(doc, b, 1), b, f.filename().string()).dump();
    std::string two = reports_json(run_checks(doc, b, 1), b, f.filename().string()).dump();
    std::string par = reports_json(run_checks(doc, b, 4), b, f.filename().string()).dump();
    EXPECT_EQ(one, two) << f;
    EXPECT_EQ(one, par) << f;
  }
}

TEST(Report, ExitStatus) {
  std::vector<Report> rs(2);
  rs[0].verdict = Verdict::fails("x", json::object());
  rs[1].verdict = Verdict::holds();
  EXPECT_EQ(exit_status(rs), 0);
  rs[1].verdict = Verdict::inconclusive("bounds");
  EXPECT_EQ(exit_status(rs), 1);
  rs[0].error = "boom";
  EXPECT_EQ(exit_status(rs), 2);
}

TEST(Report, BoundsText) {
  Bounds b = parse_bounds("m_max=10, period_max = 5");
  EXPECT_EQ(b.m_max, 10);
  EXPECT_EQ(b.n_max, 3);
  EXPECT_EQ(b.period_max, 5);
  EXPECT_EQ(b.special_window, 64);
  EXPECT_THROW(parse_bounds("m_max=ten"), std::invalid_argument);
  EXPECT_THROW(parse_bounds("depth=3"), std::invalid_argument);
}

TEST(Report, SmallBoundsGiveInconclusive) {
  // Smith algebra with v = t^2: no closed form for v^(m), so bounded search only.
  auto doc = dsl::parse_spec("field Q\nbase P = poly(t)\nauto sh on P { t -> t + 1 }\n"
                             "ring S = ambiskew(P, sh, v = t^2 + 1, rho = 1)\ncheck simple(S)\n");
  Bounds b;
  b.m_max = 3;
  auto rs = run_checks(doc, b);
  ASSERT_EQ(rs.size(), 1u);
  EXPECT_TRUE(rs[0].verdict.is_fails());   // conformal, so decided anyway
  EXPECT_EQ(rs[0].verdict.failed_condition, "singular");
}

// ------------------------------------------------------------ brute force

TEST(BruteForce, NoSplittingOnC2WithRhoOne) {
  // v = 1 over F C_2 with alpha(s) = -s, rho = 1: u - alpha(u) never has a
  // constant term, so no u with small coefficients splits v.
  auto doc = dsl::parse_spec("field Q\nbase C = cyclic_group(s, n = 2, epsilon = -1)\n"
                             "auto a on C { s -> -s }\nring R = ambiskew(C, a, v = 1 + 0*s, rho = 1)\n");
  auto R = doc.env.algebras.at("R");
  const Ring& r = ring_of(R);
  Ctx c = doc.env.ctx;
  for (int b0 = -4; b0 <= 4; ++b0)
    for (int b1 = -4; b1 <= 4; ++b1) {
      AlgElem u = scalar(r.base, Scalar(c, static_cast<long>(b0))) +
                  monomial(r.base, 1, Scalar(c, static_cast<long>(b1)));
      EXPECT_NE(u - r.rho * apply_auto(r.alpha, u), r.v);
    }
  EXPECT_EQ(conformality(R).status, Status::Fails);
}

TEST(BruteForce, SpecialSearchAgreesWithWindow) {
  // Heisenberg data over Q[t, t^-1]: alpha(t) = q t, gamma = id. A (0, -j)
  // special element c = t^i needs rho^j q^i = 1; compare the exhaustive
  // window search with the lattice search for several (q, rho).
  struct Case {
    long q, rho;
  };
  for (Case cs : {Case{2, 2}, Case{2, 3}, Case{4, 2}, Case{3, -3}, Case{2, 1}}) {
    Ctx c = ScalarContext::get(0, 1, {});
    auto L = make_laurent(c);
    Scalar q(c, cs.q), rho(c, cs.rho);
    auto alpha = auto_scale(L, q), gamma = auto_identity(L);
    bool window = false;
    for (int i = -8; i <= 8 && !window; ++i)
      for (int j = -8; j <= 8 && !window; ++j) {
        if (i == 0 && j == 0) continue;
        SpecialElement s{monomial(L, i, Scalar(c, 1L)), 0, j};
        window = is_special(alpha, gamma, rho, s);
      }
    auto search = special_element_search(L, alpha, gamma, rho, SpecialMode::ZeroMOnly);
    EXPECT_EQ(search.status == Status::Holds, window) << cs.q << " " << cs.rho;
    if (search.found) EXPECT_TRUE(is_special(alpha, gamma, rho, *search.found));
  }
}
