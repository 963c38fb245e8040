// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 when any
// criterion fails. Expected verdicts come from closed forms computed here, not
// from the library.

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "ambiskew/report.hpp"
#include "identity_suite.hpp"
#include "oracle.hpp"

using namespace ambiskew;

namespace {

struct Failures {
  std::vector<std::string> list;
  template <class... T>
  void expect(bool ok, const T&... msg) {
    if (ok) return;
    std::ostringstream o;
    (o << ... << msg);
    list.push_back(o.str());
  }
  void absorb(const std::vector<std::string>& more) { list.insert(list.end(), more.begin(), more.end()); }
};

struct Run {
  dsl::Document doc;
  std::vector<Report> reports;
  const Report& at(size_t i) const { return reports.at(i); }
};

Run run(const std::string& text, const Bounds& b = {}) {
  Run r{dsl::parse_spec(text, AMBISKEW_CATALOG_DIR), {}};
  r.reports = run_checks(r.doc, b);
  return r;
}

// Every decided report carries a certificate that re-checks.
void all_verified(Failures& f, const Run& r) {
  for (const auto& rep : r.reports) {
    f.expect(rep.error.empty(), "line ", rep.line, ": ", rep.error);
    if (!rep.verdict.is_inconclusive())
      f.expect(verify_certificate(rep), "line ", rep.line, ": certificate of ", rep.target, " does not verify");
  }
}

const ConditionResult* condition(const Report& r, const std::string& name) {
  for (const auto& c : r.verdict.conditions)
    if (c.name == name) return &c;
  return nullptr;
}

std::string q(const mpq_class& v) { return "(" + v.get_str() + ")"; }

// v/w is an odd integer, up to sign.
bool odd_ratio(const mpq_class& v, const mpq_class& w) {
  if (w == 0) return false;
  mpq_class r = abs(v / w);
  return r.get_den() == 1 && mpz_odd_p(r.get_num_mpz_t());
}

// ---------------------------------------------------------------- criteria

void quantum_plane_weyl_trichotomy(Failures& f) {
  // Quantum plane, q formal: conformal with u = 0, not simple, localization simple.
  Run p = run("field Q[q]\nbase F = field()\nring P = ambiskew(F, id, v = 0, rho = q)\n"
              "check conformal(P)\ncheck simple(P)\ncheck localized_simple(P)\n");
  all_verified(f, p);
  f.expect(p.at(0).verdict.is_holds() && p.at(0).verdict.certificate.value("u", "") == "0", "quantum plane u = 0");
  f.expect(p.at(1).verdict.is_fails(), "quantum plane is not simple");
  f.expect(p.at(2).verdict.is_holds(), "quantum plane localization simple for formal q");

  // At a primitive fifth root the localization fails; the witness lives at order 5.
  Run z = run("field Q(zeta_5)\nbase F = field()\nring P = ambiskew(F, id, v = 0, rho = zeta)\n"
              "check localized_simple(P)\n");
  all_verified(f, z);
  const Verdict& zv = z.at(0).verdict;
  f.expect(zv.is_fails() && zv.certificate.value("kind", "") == "special", "zeta_5 localization fails with a special element");
  if (zv.is_fails()) {
    long m = zv.certificate.value("m", 0L), j = zv.certificate.value("j", 0L);
    f.expect((m != 0 || j != 0) && m % 5 == 0 && j % 5 == 0, "special index (", m, ",", j, ") not at order 5");
  }

  // Weyl algebra over Q: simple, with v^(m) = m.
  Run w = run("field Q\nbase F = field()\nring R = ambiskew(F, id, v = 1, rho = 1)\ncheck simple(R)\n");
  all_verified(f, w);
  f.expect(w.at(0).verdict.is_holds(), "Weyl over Q is simple");
  const Ring& wr = ring_of(w.doc.env.algebras.at("R"));
  for (long m = 1; m <= 200; ++m)
    f.expect(oracle::naive_vm(wr, m) == scalar(wr.base, Scalar(wr.base->ctx, m)), "v^(", m, ") != ", m);

  // Over GF(5): v^(5) = 0 and the positive characteristic witness n = 1, b0 = -1.
  Run w5 = run("field GF(5)\nbase F = field()\nring R = ambiskew(F, id, v = 1, rho = 1)\ncheck simple(R)\n");
  all_verified(f, w5);
  const Report& r5 = w5.at(0);
  f.expect(r5.verdict.is_fails(), "Weyl over GF(5) is not simple");
  const ConditionResult* units = condition(r5, "units_all_m");
  f.expect(units && units->status == Status::Fails && units->certificate.value("m", 0L) == 5,
           "GF(5): units fail at m = 5");
  const ConditionResult* cp = condition(r5, "charp_condition");
  bool witness = cp && cp->status == Status::Fails && cp->certificate.value("n", -1L) == 1 &&
                 cp->certificate["b"].size() == 1;
  f.expect(witness, "GF(5): witness with n = 1");
  if (witness) {
    Ctx c5 = w5.doc.env.ctx;
    Scalar b0 = dsl::eval_scalar(*dsl::parse_expr(cp->certificate["b"][0].get<std::string>()), c5);
    f.expect(b0 == Scalar(c5, -1L), "GF(5): b0 = ", b0, ", expected -1");
  }

  // Quantized Weyl algebra: u = (1 - q)^-1 and not simple.
  Run a = run("field Q[q]\nbase F = field()\nring A = ambiskew(F, id, v = 1, rho = q)\n"
              "check conformal(A)\ncheck simple(A)\n");
  all_verified(f, a);
  f.expect(a.at(0).verdict.is_holds(), "quantized Weyl is conformal");
  if (a.at(0).verdict.is_holds()) {
    auto F = ring_of(a.doc.env.algebras.at("A")).base;
    f.expect(dsl::parse_element(a.at(0).verdict.certificate["u"], F) == dsl::parse_element("(1 - q)^-1", F),
             "quantized Weyl u = ", a.at(0).verdict.certificate["u"]);
  }
  f.expect(a.at(1).verdict.is_fails(), "quantized Weyl is not simple");
}

void conjugation_grid(Failures& f) {
  std::ostringstream doc;
  doc << "field Q\nbase C = quadratic(i, d = -1)\nauto conj on C { i -> -i }\n";
  struct Case {
    long a, b, rho;
  };
  std::vector<Case> cases;
  for (long a = -2; a <= 2; ++a)
    for (long b = -2; b <= 2; ++b)
      for (long rho : {1L, -1L, 2L}) {
        doc << "ring R" << cases.size() << " = ambiskew(C, conj, v = " << a << " + " << b << "*i, rho = " << rho
            << ")\ncheck simple(R" << cases.size() << ")\n";
        cases.push_back({a, b, rho});
      }
  Run r = run(doc.str());
  all_verified(f, r);
  f.expect(r.reports.size() == 75, "expected 75 cases");
  for (size_t k = 0; k < cases.size(); ++k) {
    const Case& c = cases[k];
    bool simple = (c.rho == 1 && c.a != 0) || (c.rho == -1 && c.b != 0);
    const Verdict& v = r.at(k).verdict;
    f.expect(!v.is_inconclusive() && v.is_holds() == simple, "(a,b,rho) = (", c.a, ",", c.b, ",", c.rho, "): got ",
             status_name(v.status));
  }
}

void weyl_towers(Failures& f) {
  Run r = run("field Q[l12, l13, l23]\nbase F = field()\n"
              "ring A1 = ambiskew(F, id, v = 1, rho = 1, y = y1, x = x1)\n"
              "auto a2 on A1 { y1 -> l12^-1*y1, x1 -> l12*x1 }\n"
              "ring A2 = ambiskew(A1, a2, v = 1, rho = 1, y = y2, x = x2)\ncheck simple(A2)\n"
              "auto a3 on A2 { y1 -> l13^-1*y1, x1 -> l13*x1, y2 -> l23^-1*y2, x2 -> l23*x2 }\n"
              "ring A3 = ambiskew(A2, a3, v = 1, rho = 1, y = y3, x = x3)\ncheck simple(A3)\n");
  all_verified(f, r);
  for (const auto& rep : r.reports)
    f.expect(rep.verdict.is_holds() && rep.verdict.theorem == "iterated_criterion", rep.target, " tower verdict ",
             status_name(rep.verdict.status));
}

void cyclic_group_algebras(Failures& f) {
  // n = 2, rho = 1, v = c0 + c1 s: simple iff c0 != 0 and c1 != +-m c0 for odd m.
  std::mt19937 rng(2024);
  auto rnd = [&](long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); };
  std::ostringstream doc;
  doc << "field Q\nbase C = cyclic_group(s, n = 2, epsilon = -1)\nauto a on C { s -> -s }\n";
  std::vector<std::pair<mpq_class, mpq_class>> cs;
  for (int k = 0; k < 50; ++k) {
    mpq_class c0(rnd(-4, 4), rnd(1, 3));
    c0.canonicalize();
    mpq_class c1;
    switch (k % 4) {
      case 0: c1 = c0 * (2 * rnd(0, 4) + 1) * (rnd(0, 1) ? 1 : -1); break;   // resonant
      case 1: c1 = c0 * 2 * rnd(-3, 3); break;                              // even multiple
      default: c1 = mpq_class(rnd(-9, 9), rnd(1, 4)); c1.canonicalize();
    }
    doc << "ring R" << k << " = ambiskew(C, a, v = " << q(c0) << " + " << q(c1) << "*s, rho = 1)\ncheck simple(R" << k
        << ")\n";
    cs.push_back({c0, c1});
  }
  Run r = run(doc.str());
  all_verified(f, r);
  int simple_count = 0;
  for (size_t k = 0; k < cs.size(); ++k) {
    auto [c0, c1] = cs[k];
    bool simple = c0 != 0 && !odd_ratio(c1, c0);
    simple_count += simple;
    const Verdict& v = r.at(k).verdict;
    f.expect(!v.is_inconclusive() && v.is_holds() == simple, "n=2 (c0,c1) = (", c0, ",", c1, "): got ",
             status_name(v.status));
  }
  f.expect(simple_count > 5 && simple_count < 45, "n=2 sample is one-sided: ", simple_count, " simple");

  // n = 4, v = s + mu s^3, rho = i: simple iff mu != +-1/a for odd a.
  for (mpq_class mu : {mpq_class(2), mpq_class(1, 3), mpq_class(-1, 5), mpq_class(7)}) {
    Run r4 = run("field Q(zeta_4)\nbase C = cyclic_group(s, n = 4, epsilon = zeta)\nauto a1 on C { s -> zeta*s }\n"
                 "ring R1 = ambiskew(C, a1, v = s + " + q(mu) + "*s^3, rho = zeta)\ncheck simple(R1)\n");
    all_verified(f, r4);
    bool simple = !odd_ratio(1, mu);
    const Verdict& v = r4.at(0).verdict;
    f.expect(!v.is_inconclusive() && v.is_holds() == simple, "n=4 mu = ", mu, ": got ", status_name(v.status));
  }
}

void reflection_algebra_grid(Failures& f) {
  // Both iteration orders; simple iff t != 0 and 2c != +-m t for odd m.
  std::vector<mpq_class> ts = {0, 1, -1, 2, mpq_class(1, 2), mpq_class(-2, 3), 3};
  std::vector<mpq_class> cvals = {0, mpq_class(1, 2), 1, mpq_class(3, 2), mpq_class(-5, 2), 2, mpq_class(1, 6)};
  std::ostringstream doc;
  doc << "field Q\nbase C = cyclic_group(s, n = 2, epsilon = -1)\nauto a1 on C { s -> -s }\n";
  int k = 0;
  for (const auto& t : ts)
    for (const auto& c : cvals) {
      std::string v1 = "2*" + q(t) + " - 4*" + q(c) + "*s", v2 = "2*" + q(t);
      doc << "ring S" << k << " = ambiskew(C, a1, v = " << v1 << ", rho = 1, y = y1, x = x1)\n"
          << "ring R" << k << " = ambiskew(S" << k << ", id, v = " << v2 << ", rho = 1, y = y2, x = x2)\n"
          << "check simple(R" << k << ")\n"
          << "ring B" << k << " = ambiskew(C, id, v = " << v2 << ", rho = 1, y = y2, x = x2)\n"
          << "auto tau" << k << " on B" << k << " { s -> -s }\n"
          << "ring Q" << k << " = ambiskew(B" << k << ", tau" << k << ", v = " << v1 << ", rho = 1, y = y1, x = x1)\n"
          << "check simple(Q" << k << ")\n";
      ++k;
    }
  Run r = run(doc.str());
  all_verified(f, r);
  k = 0;
  for (const auto& t : ts)
    for (const auto& c : cvals) {
      bool simple = t != 0 && !odd_ratio(2 * c, t);
      const Verdict &a = r.at(2 * k).verdict, &b = r.at(2 * k + 1).verdict;
      f.expect(!a.is_inconclusive() && a.is_holds() == simple, "(t,c) = (", t, ",", c, ") first order: ",
               status_name(a.status), " ", a.reason);
      f.expect(!b.is_inconclusive() && b.is_holds() == simple, "(t,c) = (", t, ",", c, ") second order: ",
               status_name(b.status), " ", b.reason);
      ++k;
    }
}

void quantized_heisenberg(Failures& f) {
  Run r = run("field Q[q, r]\nbase L = laurent(t)\nauto a on L { t -> q*t }\n"
              "ring U1 = ambiskew(L, a, v = t, rho = q^-1)\nring U2 = ambiskew(L, a, v = t, rho = q)\n"
              "ring U3 = ambiskew(L, a, v = t, rho = 1)\nring U4 = ambiskew(L, a, v = t, rho = r)\n"
              "check simple(U1)\ncheck simple(U2)\ncheck simple(U3)\n"
              "check localized_simple(U4)\ncheck localized_simple(U2)\n");
  all_verified(f, r);
  f.expect(r.at(0).verdict.is_holds(), "rho = q^-1 is simple");
  f.expect(r.at(1).verdict.is_fails(), "rho = q is not simple");
  f.expect(r.at(2).verdict.is_fails(), "rho = 1 is not simple");
  f.expect(r.at(3).verdict.is_holds(), "independent (q, rho): localization simple");
  const Verdict& v = r.at(4).verdict;
  f.expect(v.is_fails() && v.certificate.value("kind", "") == "special", "rho = q: localization fails on a special element");
  if (v.is_fails()) {
    auto L = r.doc.env.algebras.at("L");
    AlgElem c = dsl::parse_element(v.certificate.value("c", "0"), L);
    f.expect(c.flat.size() == 1 && !c.as_scalar(), "special element ", c, " is not a power of t");
  }
}

void quantum_tori(Failures& f) {
  Run r = run("field Q\ncheck torus(torus_4x4.csv)\ncheck torus(torus_block.csv)\n");
  all_verified(f, r);
  f.expect(r.at(0).verdict.is_holds(), "4x4 torus is simple");
  f.expect(r.at(1).verdict.is_fails() && r.at(1).verdict.certificate.value("kind", "") == "torus_relation",
           "block torus fails with a kernel vector");
}

void identity_suites(Failures& f) {
  f.absorb(identity_suite::powers(100, 8, 81));
  f.absorb(identity_suite::w_products(100, 6, 82));
  f.absorb(identity_suite::associativity(200, 83));
  f.absorb(identity_suite::rewriting(200, 84));
}

void generalized_weyl(Failures& f) {
  Run r = run("field Q\nbase P = poly(t)\nbase F = field()\nauto sh on P { t -> t + 1 }\n"
              "ring T = gwa(P, sh, u = t)\nring T0 = gwa(F, id, u = 1)\ncheck simple(T)\ncheck simple(T0)\n");
  all_verified(f, r);
  f.expect(r.at(0).verdict.is_holds(), "shift over Q[t] is simple");
  const Verdict& t0 = r.at(1).verdict;
  f.expect(t0.is_fails() && t0.failed_condition == "outer" && t0.certificate.value("m", 0L) == 1,
           "identity over F fails outerness at m = 1");
  for (long p : {3L, 5L, 7L}) {
    Run rp = run("field GF(" + std::to_string(p) + ")\nbase P = poly(t)\nauto sh on P { t -> t + 1 }\n"
                 "ring T = gwa(P, sh, u = t)\ncheck simple(T)\n");
    all_verified(f, rp);
    const Verdict& v = rp.at(0).verdict;
    f.expect(v.is_fails() && v.failed_condition == "alpha_simple", "GF(", p, "): shift is not alpha-simple");
    if (!v.is_fails()) continue;
    auto P = rp.doc.env.algebras.at("P");
    AlgElem g = dsl::parse_element(v.certificate.value("generator", "0"), P);
    f.expect(g == dsl::parse_element("t^" + std::to_string(p) + " - t", P), "GF(", p, "): witness ", g);
  }
}

void determinism_round_trip(Failures& f) {
  namespace fs = std::filesystem;
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(AMBISKEW_CATALOG_DIR))
    if (e.path().extension() == ".ask") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  f.expect(files.size() >= 15, "catalog has ", files.size(), " fixtures");
  auto full = [&](int jobs) {
    std::string out;
    for (const auto& p : files) {
      auto doc = dsl::parse_file(p.string());
      Bounds b;
      out += reports_json(run_checks(doc, b, jobs), b, p.filename().string()).dump(2);
    }
    return out;
  };
  std::string first = full(1), second = full(1), parallel = full(4);
  f.expect(first == second, "two catalog runs differ");
  f.expect(first == parallel, "parallel catalog run differs");
  for (const auto& p : files) {
    auto doc = dsl::parse_file(p.string());
    std::string printed = dsl::print_spec(doc);
    auto again = dsl::parse_spec(printed, p.parent_path().string());
    f.expect(dsl::same_statements(doc, again), p.filename().string(), ": parse(print(doc)) != doc");
    f.expect(dsl::print_spec(again) == printed, p.filename().string(), ": printing is not stable");
  }
}

struct Criterion {
  int id;
  const char* title;
  double limit;   // seconds, 0 = none
  std::function<void(Failures&)> body;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "quantum plane, Weyl and quantized Weyl trichotomy", 1.0, quantum_plane_weyl_trichotomy},
      {2, "conjugation on Q(i), 75-case grid", 2.0, conjugation_grid},
      {3, "higher Weyl towers with formal lambdas", 10.0, weyl_towers},
      {4, "group algebras of C_2 and C_4", 0, cyclic_group_algebras},
      {5, "reflection algebra of S_2, 7x7 grid, both orders", 0, reflection_algebra_grid},
      {6, "quantized Heisenberg algebra and its localization", 0, quantized_heisenberg},
      {7, "quantum tori", 0, quantum_tori},
      {8, "identity suites and associativity", 0, identity_suites},
      {9, "generalized Weyl algebras over the shift", 0, generalized_weyl},
      {10, "catalog determinism and round trip", 0, determinism_round_trip},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Failures f;
    auto t0 = std::chrono::steady_clock::now();
    try {
      c.body(f);
    } catch (const std::exception& ex) {
      f.list.push_back(std::string("exception: ") + ex.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.limit > 0 && secs >= c.limit) f.expect(false, "took ", secs, " s, limit ", c.limit, " s");
    bool ok = f.list.empty();
    failed += !ok;
    std::printf("%s criterion %d: %s (%.2f s)\n", ok ? "PASS" : "FAIL", c.id, c.title, secs);
    for (size_t i = 0; i < f.list.size() && i < 8; ++i) std::printf("    %s\n", f.list[i].c_str());
    if (f.list.size() > 8) std::printf("    ... %zu more\n", f.list.size() - 8);
    std::fflush(stdout);
  }
  return failed ? 1 : 0;
}
