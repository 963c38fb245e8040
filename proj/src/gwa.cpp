#include "ambiskew/gwa.hpp"

#include "ambiskew/coeff.hpp"
#include "ambiskew/simplicity.hpp"
#include "ambiskew/upoly.hpp"

namespace ambiskew {

namespace {

void check_same(const GwaElement& f, const GwaElement& g) {
  if (f.spec != g.spec) throw MathError("elements of different generalized Weyl algebras");
}

void put(GwaElement& f, int d, const AlgElem& c) {
  auto it = f.terms.find(d);
  if (it == f.terms.end()) {
    if (!c.is_zero()) f.terms.emplace(d, c);
    return;
  }
  it->second = it->second + c;
  if (it->second.is_zero()) f.terms.erase(it);
}

// Z_d a = sigma_d(a) Z_d
AutoPtr sigma(const GwaSpec& t, int d) {
  if (d >= 0) return power(t.alpha, d);
  return power(t.beta, -d);
}

// Z_d Z_e = P(d, e) Z_{d+e}
AlgElem shift_product(const GwaSpec& t, int d, int e) {
  AlgElem c = one(t.base);
  if (d < 0 && e > 0) {
    int j = -d, k = std::min(e, j);
    for (int l = j - 1; l >= j - k; --l) c = c * apply_auto(power(t.beta, l), t.u);
  } else if (d > 0 && e < 0) {
    int i = d, k = std::min(i, -e);
    for (int l = i; l > i - k; --l) c = c * apply_auto(power(t.alpha, l), t.u);
  }
  return c;
}

ConditionResult condition(const std::string& name, const Verdict& v) {
  ConditionResult c;
  c.name = name;
  c.status = v.status;
  c.detail = v.reason;
  c.certificate = v.certificate;
  return c;
}

Verdict outer_condition(const GwaSpec& t, const Bounds& bounds) {
  long ord = auto_order(t.alpha, bounds);
  if (ord > 0) {
    Verdict v = Verdict::fails("outer", {{"kind", "inner_power"}, {"m", ord}});
    v.reason = "alpha^" + std::to_string(ord) + " is the identity";
    return v;
  }
  if (ord == 0 && t.base->commutative()) return Verdict::holds({{"kind", "infinite_order"}});
  if (ord == 0) return Verdict::inconclusive("inner automorphisms of a noncommutative base are not decided");
  return Verdict::inconclusive("order of alpha not detected up to period_max");
}

Verdict regular_condition(const GwaSpec& t) {
  if (t.u.is_zero()) return Verdict::fails("regular", {{"kind", "zero"}});
  if (is_domain(t.base)) return Verdict::holds({{"kind", "domain_nonzero"}});
  if (!t.base->commutative()) return Verdict::inconclusive("regularity over this base is not decided");
  // A finite product of fields: regular means invertible.
  UnitCheck uc = unit_check(t.u);
  if (uc.status == Status::Holds) return Verdict::holds({{"kind", "unit"}, {"inverse", to_string(*uc.inverse)}});
  if (uc.status == Status::Fails) {
    Verdict v = Verdict::fails("regular", {{"kind", "zero_divisor"}, {"witness", uc.witness}});
    v.reason = "u is a zero divisor";
    return v;
  }
  return Verdict::inconclusive("unit status of u undecided");
}

// Largest m at which u(t) and u(t + m c) can share a root, when u and c are rational.
std::optional<long> shift_root_bound(const GwaSpec& t) {
  if (t.base->family != Family::Poly || t.base->ctx->characteristic != 0) return std::nullopt;
  if (!t.alpha->lam.is_one() || t.alpha->shift.is_zero() || !t.alpha->shift.is_rational())
    return std::nullopt;
  upoly::UP p = upoly::from_elem(t.u);
  int n = upoly::deg(p);
  if (n < 1) return std::nullopt;
  if (!p[n].is_rational()) return std::nullopt;
  mpq_class lead = p[n].rational_value(), B = 0;
  for (int i = 0; i < n; ++i) {
    if (!p[i].is_rational()) return std::nullopt;
    mpq_class r = abs(p[i].rational_value() / lead);
    if (r > B) B = r;
  }
  // Cauchy: every root has modulus <= 1 + B.
  mpq_class m = 2 * (1 + B) / abs(t.alpha->shift.rational_value());
  mpz_class f = m.get_num() / m.get_den();
  if (!f.fits_slong_p() || f > 100000) return std::nullopt;
  return f.get_si();
}

Verdict comaximal_condition(const GwaSpec& t, const Bounds& bounds) {
  if (unit_check(t.u).status == Status::Holds) return Verdict::holds({{"kind", "u_unit"}});
  auto fail = [&](long m, const Verdict& c) {
    Verdict v = Verdict::fails("comaximal", {{"kind", "not_comaximal"}, {"m", m}, {"witness", c.certificate}});
    v.reason = "uA + alpha^" + std::to_string(m) + "(u)A is proper";
    return v;
  };
  auto bound = shift_root_bound(t);
  long top = bound ? std::max(*bound, 1L) : bounds.m_max;
  bool undecided = false;
  AlgElem am = t.u;
  for (long m = 1; m <= top; ++m) {
    am = apply_auto(t.alpha, am);
    Verdict c = comaximal(t.u, am);
    if (c.is_fails()) return fail(m, c);
    if (c.is_inconclusive()) undecided = true;
  }
  if (bound && !undecided) return Verdict::holds({{"kind", "shift_root_bound"}, {"bound", top}});
  Verdict v = Verdict::inconclusive("no failure for m <= " + std::to_string(top));
  v.certificate = {{"kind", "bounds_exhausted"}, {"m_max", top}};
  return v;
}

}  // namespace

GwaPtr make_gwa(std::string name, AlgebraPtr base, AutoPtr alpha, AlgElem u, AutoPtr gamma) {
  if (auto err = validate_auto(alpha)) throw ValidationError("alpha: " + *err);
  if (!gamma) {
    if (u.is_zero() || base->commutative()) {
      gamma = auto_identity(base);
    } else if (auto g = normalizing_auto(u)) {
      gamma = *g;
    } else {
      throw ValidationError("u is not normal; cannot determine gamma");
    }
  } else if (auto err = validate_auto(gamma)) {
    throw ValidationError("gamma: " + *err);
  }
  if (!auto_equal(compose(alpha, gamma), compose(gamma, alpha)))
    throw ValidationError("alpha and gamma do not commute");
  for (const auto& a : algebra_generators(base))
    if (u * a != apply_auto(gamma, a) * u) throw ValidationError("u is not gamma-normal");
  if (apply_auto(gamma, u) != u) throw ValidationError("gamma(u) != u");
  auto t = std::make_shared<GwaSpec>();
  t->name = std::move(name);
  t->base = std::move(base);
  t->alpha = alpha;
  t->gamma = gamma;
  t->beta = compose(inverse(alpha), gamma);
  t->u = std::move(u);
  return t;
}

GwaPtr gwa_from_ambiskew(const AlgebraPtr& r) {
  const Ring& R = ring_of(r);
  Conformality cf = conformality(r);
  if (cf.status == Status::Fails) throw ValidationError(R.name + " is singular: no Casimir element");
  if (cf.status == Status::Inconclusive) throw ValidationError("conformality of " + R.name + " undecided");
  return make_gwa(R.name + "/zR", R.base, R.alpha, *cf.u, R.gamma);
}

AlgElem GwaElement::coeff(int d) const {
  auto it = terms.find(d);
  return it == terms.end() ? zero(spec->base) : it->second;
}

bool GwaElement::operator==(const GwaElement& o) const {
  if (spec != o.spec || terms.size() != o.terms.size()) return false;
  for (const auto& [d, c] : terms)
    if (o.coeff(d) != c) return false;
  return true;
}

GwaElement gwa_zero(const GwaPtr& t) { return {t, {}}; }
GwaElement gwa_term(const GwaPtr& t, int degree, const AlgElem& c) {
  GwaElement f{t, {}};
  put(f, degree, c);
  return f;
}
GwaElement gwa_const(const GwaPtr& t, const AlgElem& a) { return gwa_term(t, 0, a); }
GwaElement gwa_X(const GwaPtr& t, int p) { return gwa_term(t, -p, one(t->base)); }
GwaElement gwa_Y(const GwaPtr& t, int p) { return gwa_term(t, p, one(t->base)); }

GwaElement operator+(const GwaElement& f, const GwaElement& g) {
  check_same(f, g);
  GwaElement h = f;
  for (const auto& [d, c] : g.terms) put(h, d, c);
  return h;
}

GwaElement operator-(const GwaElement& f, const GwaElement& g) {
  check_same(f, g);
  GwaElement h = f;
  for (const auto& [d, c] : g.terms) put(h, d, -c);
  return h;
}

GwaElement gwa_mul(const GwaElement& f, const GwaElement& g) {
  check_same(f, g);
  const GwaSpec& t = *f.spec;
  GwaElement h{f.spec, {}};
  for (const auto& [d, a] : f.terms)
    for (const auto& [e, b] : g.terms)
      put(h, d + e, a * apply_auto(sigma(t, d), b) * shift_product(t, d, e));
  return h;
}

GwaElement gwa_image(const GwaPtr& t, const AlgElem& r_elem) {
  GwaElement h = gwa_zero(t);
  for (const auto& term : r_elem.nest)
    h = h + gwa_X(t, term.i) * gwa_const(t, term.c) * gwa_Y(t, term.j);
  return h;
}

std::string to_string(const GwaElement& f) {
  if (f.is_zero()) return "0";
  std::string out;
  for (auto it = f.terms.rbegin(); it != f.terms.rend(); ++it) {
    auto [d, c] = *it;
    std::string cs = to_string(c);
    bool neg = cs[0] == '-' && cs.find_first_of("+-", 1) == std::string::npos;
    if (neg) cs = cs.substr(1);
    if (!out.empty()) out += neg ? " - " : " + ";
    else if (neg) out += "-";
    std::string z = d > 0 ? f.spec->yname : f.spec->xname;
    int e = d > 0 ? d : -d;
    if (e > 1) z += "^" + std::to_string(e);
    if (d == 0) {
      out += cs;
    } else if (cs == "1") {
      out += z;
    } else {
      bool compound = cs.find_first_of("+-", 1) != std::string::npos;
      out += (compound ? "(" + cs + ")" : cs) + "*" + z;
    }
  }
  return out;
}

Verdict gwa_simple(const GwaPtr& t, const Bounds& bounds) {
  std::vector<ConditionResult> conds{
      condition("alpha_simple", alpha_simple(t->base, {t->alpha}, bounds)),
      condition("outer", outer_condition(*t, bounds)),
      condition("regular", regular_condition(*t)),
      condition("comaximal", comaximal_condition(*t, bounds))};
  Verdict v;
  v.theorem = "gwa_criterion";
  v.conditions = conds;
  for (const auto& c : conds)
    if (c.status == Status::Fails) {
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
  v.certificate = {{"kind", "simple"}, {"conditions", all}};
  return v;
}

}  // namespace ambiskew
