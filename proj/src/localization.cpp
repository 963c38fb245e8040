#include "ambiskew/localization.hpp"

#include <map>

#include "ambiskew/coeff.hpp"
#include "ambiskew/lattice.hpp"
#include "ambiskew/simplicity.hpp"

namespace ambiskew {

namespace {

// Integer linear system whose equations come from multiplicative relations
// prod s_i^(c_i x_i) = 1; torsion parts add one slack unknown each.
struct RelationSystem {
  size_t n;
  size_t slack = 0;
  std::vector<std::map<size_t, mpz_class>> eqs;

  struct Factor {
    Scalar s;
    size_t var;
    long coef;
  };

  bool add_multiplicative(const std::vector<Factor>& fs) {
    std::map<std::string, std::map<size_t, mpz_class>> per_key;
    std::map<size_t, mpz_class> tors;
    long modulus = 1;
    for (const auto& f : fs) {
      auto d = multiplicative_decompose(f.s);
      if (!d) return false;
      modulus = d->torsion_modulus;
      for (const auto& [key, e] : d->exps) per_key[key][f.var] += e * f.coef;
      tors[f.var] += d->torsion_exp * f.coef;
    }
    for (auto& [key, row] : per_key) eqs.push_back(row);
    if (modulus > 1) {
      tors[n + slack++] += modulus;
      eqs.push_back(tors);
    }
    return true;
  }

  void add_linear(std::map<size_t, mpz_class> row) { eqs.push_back(std::move(row)); }

  std::vector<IVec> kernel() const {
    size_t total = n + slack;
    std::vector<IVec> rows;
    for (const auto& e : eqs) {
      IVec r(total, 0);
      for (const auto& [i, c] : e) r[i] = c;
      rows.push_back(r);
    }
    std::vector<IVec> out;
    for (auto& v : integer_kernel(rows, total)) {
      v.resize(n);
      out.push_back(v);
    }
    return out;
  }
};

enum { K = 0, M = 1, J = 2 };

SpecialSearch unsupported(std::string why) {
  SpecialSearch s;
  s.reason = std::move(why);
  return s;
}

AlgElem basis_element(const AlgebraPtr& A, long k) {
  Ctx ctx = A->ctx;
  Scalar one_s(ctx, 1L);
  switch (A->family) {
    case Family::Field:
      return one(A);
    case Family::Cyclic:
      return monomial(A, static_cast<int>(((k % A->n) + A->n) % A->n), one_s);
    case Family::Quadratic:
      return monomial(A, static_cast<int>(((k % 2) + 2) % 2), one_s);
    default:
      return monomial(A, static_cast<int>(k), one_s);
  }
}

ConditionResult as_condition(const std::string& name, const Verdict& v) {
  ConditionResult c;
  c.name = name;
  c.status = v.status;
  c.detail = v.reason;
  c.certificate = v.certificate;
  return c;
}

// For all m >= 1 some u^n lies in v^(m) A.
Verdict radical_all_m(const AlgebraPtr& r, const AlgElem& u, const Bounds& bounds) {
  const Ring& R = ring_of(r);
  if (u.is_zero()) return Verdict::holds({{"kind", "u_nilpotent"}, {"n", 1}});
  Verdict units = units_for_all_m(r, bounds);
  if (units.is_holds()) return Verdict::holds({{"kind", "vm_units"}, {"units", units.certificate}});
  auto fail = [&](long m, const AlgElem& vm, json inner) {
    Verdict v = Verdict::fails("radical", {{"kind", "not_radical"},
                                           {"m", m},
                                           {"value", to_string(vm)},
                                           {"witness", std::move(inner)}});
    v.reason = "no power of u lies in v^(" + std::to_string(m) + ")A";
    return v;
  };
  bool reduced = R.base->commutative();
  VmShape shape = vm_shape(R, bounds);
  if (shape.kind == VmShape::Eigen) {
    // v^(m) = [m]_mu v
    if (units.is_fails() && units.certificate.value("witness", json::object()).value("reason", "") ==
                                "q_integer_zero") {
      long m = units.certificate["m"].get<long>();
      if (reduced) return fail(m, zero(R.base), {{"kind", "zero_ideal"}});
      return Verdict::inconclusive("nilpotency of u is not decided over this base");
    }
    if (units.is_inconclusive()) return units;
    Verdict rm = radical_membership(u, R.v);
    if (rm.is_holds())
      return Verdict::holds({{"kind", "radical_eigen"}, {"mu", shape.mu.str()}, {"member", rm.certificate}});
    if (rm.is_fails()) return fail(1, R.v, rm.certificate);
    return rm;
  }
  for (long m = 1; m <= bounds.m_max; ++m) {
    AlgElem vm = R.vm(m);
    Verdict rm = radical_membership(u, vm);
    if (rm.is_fails()) return fail(m, vm, rm.certificate);
  }
  Verdict v = Verdict::inconclusive("no closed form for v^(m); no failure for m <= " +
                                    std::to_string(bounds.m_max));
  v.certificate = {{"kind", "bounds_exhausted"}, {"m_max", bounds.m_max}};
  return v;
}

}  // namespace

bool is_special(const AutoPtr& alpha, const AutoPtr& gamma, const Scalar& rho,
                const SpecialElement& s) {
  if (s.c.is_zero()) return false;
  if (apply_auto(gamma, s.c) != rho.pow(s.m) * s.c) return false;
  if (apply_auto(alpha, s.c) != rho.pow(s.j) * s.c) return false;
  AutoPtr gj = power(gamma, s.j), am = power(alpha, s.m);
  for (const auto& g : algebra_generators(alpha->alg))
    if (s.c * apply_auto(gj, g) != apply_auto(am, g) * s.c) return false;
  return true;
}

SpecialSearch special_element_search(const AlgebraPtr& A, const AutoPtr& alpha,
                                     const AutoPtr& gamma, const Scalar& rho, SpecialMode mode) {
  if (A->family == Family::Nested)
    return unsupported("special elements over a noncommutative base are not searched");
  Ctx ctx = A->ctx;
  RelationSystem sys{3};
  auto mult = [&](std::vector<RelationSystem::Factor> fs) { return sys.add_multiplicative(fs); };
  bool poly_shift = A->family == Family::Poly && (!alpha->shift.is_zero() || !gamma->shift.is_zero());
  if (poly_shift) {
    // Shifts have only the constants as eigenvectors in characteristic 0.
    if (ctx->characteristic != 0) return unsupported("shift eigenvectors in positive characteristic");
    if (!alpha->lam.is_one() || !gamma->lam.is_one())
      return unsupported("affine automorphism that is not a pure shift");
    sys.add_linear({{K, 1}});
    if (!mult({{rho, M, 1}}) || !mult({{rho, J, 1}}))
      return unsupported("multiplicative structure of rho is undecided");
    // gamma^j = alpha^m:  j * shift(gamma) = m * shift(alpha)
    const Scalar &ca = alpha->shift, &eg = gamma->shift;
    if (ca.is_zero()) {
      sys.add_linear({{J, 1}});
    } else if (eg.is_zero()) {
      sys.add_linear({{M, 1}});
    } else {
      Scalar r = eg / ca;
      if (r.is_rational()) {
        mpq_class q = r.rational_value();
        sys.add_linear({{J, q.get_num()}, {M, -q.get_den()}});
      } else {
        sys.add_linear({{M, 1}});
        sys.add_linear({{J, 1}});
      }
    }
  } else {
    if (!is_diagonal(alpha) || !is_diagonal(gamma)) return unsupported("non-diagonal automorphism");
    Scalar G = eigenvalue(gamma, 1), L = eigenvalue(alpha, 1);
    if (A->family == Family::Field) sys.add_linear({{K, 1}});
    bool ok = mult({{G, K, 1}, {rho, M, -1}}) && mult({{L, K, 1}, {rho, J, -1}});
    if (ok && A->family != Family::Field) ok = mult({{G, J, 1}, {L, M, -1}});
    if (!ok) return unsupported("multiplicative relations among the eigenvalues are undecided");
  }
  if (mode == SpecialMode::ZeroMOnly) sys.add_linear({{M, 1}});
  SpecialSearch out;
  for (auto& v : sys.kernel()) {
    if (v[M] == 0 && v[J] == 0) continue;
    if (!v[K].fits_slong_p() || !v[M].fits_slong_p() || !v[J].fits_slong_p()) continue;
    long k = v[K].get_si(), m = v[M].get_si(), j = v[J].get_si();
    bool poly = A->family == Family::Poly;
    bool preferred = m > 0 || (m == 0 && j < 0);
    if ((poly && k < 0) || (!preferred && (!poly || k == 0))) {
      k = -k;
      m = -m;
      j = -j;
    }
    SpecialElement s{basis_element(A, k), m, j};
    if (!is_special(alpha, gamma, rho, s)) return unsupported("lattice witness failed verification");
    out.status = Status::Holds;
    out.found = s;
    return out;
  }
  out.status = Status::Fails;
  return out;
}

Verdict localized_simple(const AlgebraPtr& r, const Bounds& bounds) {
  const Ring& R = ring_of(r);
  Conformality cf = conformality(r);
  if (cf.status == Status::Fails)
    throw ValidationError("data is singular: there is no Casimir element to invert");
  if (cf.status == Status::Inconclusive)
    return Verdict::inconclusive("conformality undecided: " + cf.reason);
  const AlgElem& u = *cf.u;
  // Non-nilpotent u lets the special-element condition drop to m = 0.
  bool non_nilpotent = unit_check(u).status == Status::Holds || (is_domain(R.base) && !u.is_zero());
  SpecialMode mode = non_nilpotent ? SpecialMode::ZeroMOnly : SpecialMode::All;

  Verdict special;
  SpecialSearch ss = special_element_search(R.base, R.alpha, R.gamma, R.rho, mode);
  if (ss.status == Status::Holds) {
    special = Verdict::fails("special", {{"kind", "special"},
                                         {"c", to_string(ss.found->c)},
                                         {"m", ss.found->m},
                                         {"j", ss.found->j}});
    special.reason = "(" + std::to_string(ss.found->m) + "," + std::to_string(ss.found->j) +
                     ")-special element exists";
  } else if (ss.status == Status::Fails) {
    special = Verdict::holds({{"kind", "no_special"}, {"m_zero_only", non_nilpotent}});
  } else {
    special = Verdict::inconclusive(ss.reason);
  }

  std::vector<ConditionResult> conds{
      as_condition("alpha_gamma_simple", alpha_simple(R.base, {R.alpha, R.gamma}, bounds)),
      as_condition("special", special),
      as_condition("radical", radical_all_m(r, u, bounds))};
  Verdict v;
  v.theorem = non_nilpotent ? "localized_criterion_regular_u" : "localized_criterion";
  v.conditions = conds;
  for (const char* name : {"special", "radical", "alpha_gamma_simple"})
    for (const auto& c : conds)
      if (c.name == name && c.status == Status::Fails) {
        v.status = Status::Fails;
        v.failed_condition = c.name;
        v.certificate = c.certificate;
        v.reason = c.detail;
        return v;
      }
  for (const auto& c : conds)
    if (c.status == Status::Inconclusive) {
      v.status = Status::Inconclusive;
      v.reason = c.name + ": " + c.detail;
      v.certificate = c.certificate;
      return v;
    }
  json all = json::object();
  for (const auto& c : conds) all[c.name] = c.certificate;
  v.status = Status::Holds;
  v.certificate = {{"kind", "simple"}, {"u", to_string(u)}, {"conditions", all}};
  return v;
}

std::optional<std::string> validate_torus(const TorusMatrix& q) {
  size_t n = q.size();
  for (size_t i = 0; i < n; ++i) {
    if (q[i].size() != n) return "row " + std::to_string(i + 1) + " has the wrong length";
    if (!q[i][i].is_one()) return "diagonal entry " + std::to_string(i + 1) + " is not 1";
  }
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      if (q[i][j].is_zero()) return "zero entry";
      if (!(q[i][j] * q[j][i]).is_one())
        return "q_" + std::to_string(j + 1) + std::to_string(i + 1) + " is not the inverse of q_" +
               std::to_string(i + 1) + std::to_string(j + 1);
    }
  return std::nullopt;
}

Verdict quantum_torus_simple(const TorusMatrix& q) {
  if (auto err = validate_torus(q)) throw ValidationError("torus matrix: " + *err);
  size_t n = q.size();
  RelationSystem sys{n};
  for (size_t i = 0; i < n; ++i) {
    std::vector<RelationSystem::Factor> fs;
    for (size_t r = 0; r < n; ++r) fs.push_back({q[r][i], r, 1});
    if (!sys.add_multiplicative(fs))
      return Verdict::inconclusive("multiplicative dependence undecided in column " + std::to_string(i + 1));
  }
  auto ker = sys.kernel();
  Verdict v;
  v.theorem = "torus_criterion";
  if (ker.empty()) {
    v.status = Status::Holds;
    v.certificate = {{"kind", "trivial_lattice"}, {"n", n}};
  } else {
    json m = json::array();
    for (const auto& e : ker.front()) m.push_back(e.get_si());
    v.status = Status::Fails;
    v.failed_condition = "lattice";
    v.certificate = {{"kind", "torus_relation"}, {"m", m}};
    v.reason = "nontrivial multiplicative relation among the columns";
  }
  ConditionResult c;
  c.name = "lattice";
  c.status = v.status;
  c.certificate = v.certificate;
  c.detail = v.reason;
  v.conditions.push_back(c);
  return v;
}

}  // namespace ambiskew
