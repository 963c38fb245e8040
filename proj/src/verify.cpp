// Certificate re-checking. Every function below recomputes the identities a
// certificate claims from the ring data; none of them calls back into the
// decision procedures. Claims of non-existence (no special element, trivial
// lattice, infinite order) have no finite witness; for those only the data
// they rest on is re-checked.

#include <numeric>

#include "ambiskew/coeff.hpp"
#include "ambiskew/report.hpp"
#include "ambiskew/upoly.hpp"

namespace ambiskew {

namespace {

struct Mismatch {};

void need(bool c) {
  if (!c) throw Mismatch{};
}

AlgElem elem(const json& j, const AlgebraPtr& A) {
  need(j.is_string());
  return dsl::parse_element(j.get<std::string>(), A);
}

Scalar scal(const json& j, Ctx ctx) {
  need(j.is_string());
  return dsl::eval_scalar(*dsl::parse_expr(j.get<std::string>()), ctx);
}

long integer(const json& j) {
  need(j.is_number_integer());
  return j.get<long>();
}

const json& field(const json& c, const char* key) {
  need(c.is_object() && c.contains(key));
  return c.at(key);
}

std::string kind(const json& c) {
  need(c.is_object() && c.contains("kind") && c["kind"].is_string());
  return c["kind"].get<std::string>();
}

// rho * alpha(a)
AlgElem T(const Ring& R, const AlgElem& a) { return R.rho * apply_auto(R.alpha, a); }

// v^(m) by doubling: v^(2a) = v^(a) + T^a(v^(a)), v^(a+1) = v + T(v^(a)).
AlgElem vm_direct(const Ring& R, long m) {
  need(m >= 0 && m <= (1L << 20));
  if (m == 0) return zero(R.base);
  AlgElem acc = R.v;
  long have = 1;
  for (int bit = 62 - __builtin_clzl(static_cast<unsigned long>(m)) + 1; bit-- > 0;) {
    acc = acc + R.rho.pow(have) * apply_auto(power(R.alpha, have), acc);
    have *= 2;
    if ((m >> bit) & 1) {
      acc = R.v + T(R, acc);
      ++have;
    }
  }
  need(have == m);
  return acc;
}

bool nonunit(const AlgElem& a) { return a.is_zero() || unit_check(a).status == Status::Fails; }
bool unit(const AlgElem& a) { return unit_check(a).status == Status::Holds; }

bool torsion_free_q_integers(const Scalar& mu) {
  // [m]_mu != 0 for every m >= 1.
  bool infinite = root_of_unity_order(mu).kind == RootOrder::Infinite;
  if (mu.ctx()->characteristic == 0) return mu.is_one() || infinite;
  return !mu.is_one() && infinite;
}

// ------------------------------------------------------------ alpha-simplicity

void alpha_cert(const AlgebraPtr& A, const std::vector<AutoPtr>& gs, const json& c, Status st);
void ring_simple_cert(const AlgebraPtr& r, const json& c, Status st);

void alpha_cert(const AlgebraPtr& A, const std::vector<AutoPtr>& gs, const json& c, Status st) {
  std::string k = kind(c);
  if (st == Status::Fails && k == "alpha_ideal") {
    AlgElem g = elem(field(c, "generator"), A);
    need(!g.is_zero() && nonunit(g));
    const json& ms = field(c, "multipliers");
    need(ms.is_array() && ms.size() == gs.size());
    for (size_t i = 0; i < gs.size(); ++i) {
      AlgElem h = elem(ms[i], A);
      need(unit(h));
      need(apply_auto(gs[i], g) == g * h);
    }
    return;
  }
  if (st == Status::Fails && k == "not_simple") {
    need(A->family == Family::Nested);
    for (const auto& g : gs) need(is_identity(g));
    ring_simple_cert(A, field(c, "inner"), Status::Fails);
    return;
  }
  if (k == "weyl_tensor") {
    need(A->family == Family::Nested && A->ctx->characteristic == 0);
    const Ring& R = ring_of(A);
    auto vc = R.v.as_scalar();
    need(is_identity(R.alpha) && is_identity(R.gamma) && R.rho.is_one() && vc && !vc->is_zero());
    std::vector<AutoPtr> in;
    for (const auto& g : gs) {
      need(is_diagonal(g));
      in.push_back(g->inner);
    }
    alpha_cert(R.base, in, field(c, "inner"), st);
    return;
  }
  need(st == Status::Holds && k == "alpha_simple");
  std::string arg = field(c, "argument").get<std::string>();
  if (arg == "field") {
    need(A->family == Family::Field || (A->family == Family::Quadratic && !A->root));
  } else if (arg == "swaps_characters") {
    need(A->family == Family::Quadratic);
    bool swap = false;
    for (const auto& g : gs) swap = swap || apply_auto(g, generator(A)) == -generator(A);
    need(swap);
  } else if (arg == "transitive_characters") {
    need(A->family == Family::Cyclic);
    long d = A->n;
    for (const auto& g : gs) {
      AlgElem img = apply_auto(g, generator(A));
      long a = -1;
      for (int e = 0; e < A->n && a < 0; ++e)
        if (img == monomial(A, 1, A->eps.pow(e))) a = e;
      need(a >= 0);
      d = std::gcd(d, a);
    }
    need(d == 1);
  } else if (arg == "non_torsion_scale") {
    need(A->family == Family::Laurent);
    Scalar lam = scal(field(c, "scale"), A->ctx);
    need(root_of_unity_order(lam).kind == RootOrder::Infinite);
    bool found = false;
    for (const auto& g : gs) found = found || apply_auto(g, generator(A)) == lam * generator(A);
    need(found);
  } else if (arg == "shift") {
    need(A->family == Family::Poly && A->ctx->characteristic == 0);
    Scalar sh = scal(field(c, "shift"), A->ctx);
    need(!sh.is_zero());
    bool found = false;
    for (const auto& g : gs) found = found || apply_auto(g, generator(A)) == generator(A) + scalar(A, sh);
    need(found);
  } else if (arg == "simple_ring") {
    need(A->family == Family::Nested);
    ring_simple_cert(A, field(c, "inner"), Status::Holds);
  } else {
    need(false);
  }
}

// ------------------------------------------------------------ conformality

// v has a nonzero component on an eigenvector of alpha with eigenvalue 1/rho.
void singular_cert(const AutoPtr& alpha, const AlgElem& v, const Scalar& rho, const json& c) {
  const AlgebraPtr& A = v.alg;
  Ctx ctx = A->ctx;
  std::string k = kind(c);
  if (k == "singular_component") {
    long idx = integer(field(c, "basis_index"));
    Scalar lam = scal(field(c, "eigenvalue"), ctx), co = scal(field(c, "coefficient"), ctx);
    need(!co.is_zero() && (rho * lam).is_one());
    AlgElem b;
    if (c.contains("center")) {
      need(A->family == Family::Poly && idx >= 0);
      Scalar t0 = scal(c["center"], ctx);
      AlgElem lin = generator(A) - scalar(A, t0);
      b = pow(lin, static_cast<unsigned>(idx));
      upoly::UP shifted = upoly::compose_affine(upoly::from_elem(v), Scalar(ctx, 1L), t0);
      need(static_cast<long>(shifted.size()) > idx && shifted[idx] == co);
    } else {
      b = monomial(A, static_cast<int>(idx), Scalar(ctx, 1L));
      need(v.coeff(static_cast<int>(idx)) == co);
    }
    need(apply_auto(alpha, b) == lam * b);
    return;
  }
  if (k == "periodic_obstruction") {
    long p = integer(field(c, "period"));
    need(p >= 1 && p <= 100000);
    need(rho.pow(p).is_one() && is_identity(power(alpha, p)));
    AlgElem sum = zero(A), cur = v;
    for (long i = 0; i < p; ++i) {
      sum = sum + cur;
      cur = rho * apply_auto(alpha, cur);
    }
    need(!sum.is_zero() && sum == elem(field(c, "value"), A));
    return;
  }
  if (k == "projection") {
    need(A->family == Family::Nested);
    const json& comp = field(c, "component");
    need(comp.is_array() && comp.size() == 2);
    int i = static_cast<int>(integer(comp[0])), j = static_cast<int>(integer(comp[1]));
    Scalar r = scal(field(c, "rho"), ctx);
    auto cy = alpha->img_y.nest.size() == 1 && alpha->img_y.nest[0].i == 0 && alpha->img_y.nest[0].j == 1
                  ? alpha->img_y.nest[0].c.as_scalar()
                  : std::nullopt;
    auto cx = alpha->img_x.nest.size() == 1 && alpha->img_x.nest[0].i == 1 && alpha->img_x.nest[0].j == 0
                  ? alpha->img_x.nest[0].c.as_scalar()
                  : std::nullopt;
    if (cy && cx)
      need(r == rho * cx->pow(i) * cy->pow(j));
    else
      need(v.in_degree_zero() && i == 0 && j == 0 && r == rho);
    singular_cert(alpha->inner, v.coeff(i, j), r, field(c, "inner"));
    return;
  }
  need(false);
}

AlgElem splitting_cert(const Ring& R, const json& c) {
  need(kind(c) == "splitting");
  AlgElem u = elem(field(c, "u"), R.base);
  need(u - T(R, u) == R.v);
  need(apply_auto(R.gamma, u) == u);
  for (const auto& g : algebra_generators(R.base)) need(u * g == apply_auto(R.gamma, g) * u);
  return u;
}

// ------------------------------------------------------------ v^(m)

void units_cert(const Ring& R, const json& c, Status st) {
  std::string k = kind(c);
  if (st == Status::Fails) {
    need(k == "nonunit");
    long m = integer(field(c, "m"));
    need(m >= 1);
    AlgElem val = elem(field(c, "value"), R.base);
    need(val == vm_direct(R, m) && nonunit(val));
    return;
  }
  need(k == "unit_all_m");
  std::string fam = field(c, "family").get<std::string>();
  if (fam == "eigen") {
    Scalar mu = scal(field(c, "mu"), R.base->ctx);
    AlgElem vinv = elem(field(c, "v_inverse"), R.base);
    need(R.v * vinv == one(R.base) && vinv * R.v == one(R.base));
    need(T(R, R.v) == mu * R.v);
    need(torsion_free_q_integers(mu));
    return;
  }
  need(fam == "periodic");
  long k_per = integer(field(c, "period"));
  need(k_per >= 1);
  AlgElem cur = R.v;
  for (long i = 0; i < k_per; ++i) cur = T(R, cur);
  need(cur == R.v);
  AlgElem vk = vm_direct(R, k_per);
  for (auto& [r, qs] : field(c, "checked").items()) {
    AlgElem vr = vm_direct(R, std::stol(r));
    for (const auto& q : qs) {
      long qq = integer(q);
      if (qq == 0 && r == "0") continue;
      need(unit(Scalar(R.base->ctx, qq) * vk + vr));
    }
  }
}

void charp_cert(const Ring& R, const json& c) {
  need(kind(c) == "charp_witness");
  long p = R.base->ctx->characteristic;
  need(p > 0 && is_identity(R.gamma));
  long n = integer(field(c, "n"));
  need(n >= 0 && n <= 8);
  const json& bs = field(c, "b");
  need(bs.is_array() && static_cast<long>(bs.size()) == n);
  long P = 1;
  for (long i = 0; i < n; ++i) P *= p;
  AlgElem target = pow(R.v, static_cast<unsigned>(P));
  long Pi = 1;
  for (long i = 0; i < n; ++i, Pi *= p) {
    AlgElem b = elem(bs[i], R.base);
    need(apply_auto(R.alpha, b) == R.rho.pow(Pi - P) * b);
    target = target + b * pow(R.v, static_cast<unsigned>(Pi));
  }
  AlgElem u = elem(field(c, "u"), R.base);
  need(R.rho.pow(P) * apply_auto(R.alpha, u) - u == target);
}

std::string condition_of(const json& c) {
  std::string k = kind(c);
  if (k == "splitting") return "singular";
  if (k == "nonunit") return "units_all_m";
  if (k == "charp_witness") return "charp_condition";
  return "alpha_simple";
}

void ring_condition(const AlgebraPtr& r, const std::string& name, const json& c, Status st) {
  const Ring& R = ring_of(r);
  if (name == "singular") {
    if (st == Status::Fails)
      splitting_cert(R, c);
    else
      singular_cert(R.alpha, R.v, R.rho, c);
  } else if (name == "units_all_m") {
    units_cert(R, c, st);
  } else if (name == "alpha_simple") {
    alpha_cert(R.base, {R.alpha}, c, st);
  } else if (name == "charp_condition") {
    need(st == Status::Fails);
    charp_cert(R, c);
  } else {
    need(false);
  }
}

void ring_simple_cert(const AlgebraPtr& r, const json& c, Status st) {
  if (st == Status::Fails) {
    ring_condition(r, condition_of(c), c, st);
    return;
  }
  need(r->ctx->characteristic == 0 && kind(c) == "simple");
  const json& conds = field(c, "conditions");
  for (const char* name : {"alpha_simple", "singular", "units_all_m"})
    ring_condition(r, name, field(conds, name), Status::Holds);
}

// ------------------------------------------------------------ localization

void radical_cert(const Ring& R, const AlgElem& u, const json& c, Status st) {
  const AlgebraPtr& A = R.base;
  std::string k = kind(c);
  if (st == Status::Holds) {
    if (k == "u_nilpotent") {
      long n = integer(field(c, "n"));
      need(n >= 1 && n <= 64 && pow(u, static_cast<unsigned>(n)).is_zero());
    } else if (k == "vm_units") {
      units_cert(R, field(c, "units"), Status::Holds);
    } else if (k == "radical_eigen") {
      Scalar mu = scal(field(c, "mu"), A->ctx);
      need(T(R, R.v) == mu * R.v && torsion_free_q_integers(mu));
      const json& mem = field(c, "member");
      need(kind(mem) == "radical_member");
      long n = integer(field(mem, "n"));
      need(n >= 0 && n <= 64);
      need(pow(u, static_cast<unsigned>(n)) == R.v * elem(field(mem, "h"), A));
    } else {
      need(false);
    }
    return;
  }
  need(k == "not_radical");
  long m = integer(field(c, "m"));
  need(m >= 1);
  AlgElem val = elem(field(c, "value"), A);
  need(val == vm_direct(R, m));
  const json& w = field(c, "witness");
  std::string wk = kind(w);
  need(!u.is_zero());
  if (wk == "zero_ideal" || wk == "nonzero_power") {
    // u is not nilpotent and v^(m) = 0.
    need(val.is_zero());
    if (is_domain(A)) return;
    need(has_characters(A));
    bool nonzero_char = false;
    for (const auto& x : characters(u)) nonzero_char = nonzero_char || !x.is_zero();
    need(nonzero_char);
  } else if (wk == "character") {
    need(has_characters(A));
    long l = integer(field(w, "character"));
    auto cu = characters(u), cv = characters(val);
    need(l >= 0 && l < static_cast<long>(cu.size()) && !cu[l].is_zero() && cv[l].is_zero());
  } else if (wk == "radical") {
    need(A->family == Family::Poly || A->family == Family::Laurent);
    bool laurent = A->family == Family::Laurent;
    int s1 = 0, s2 = 0;
    upoly::UP pd = laurent ? upoly::from_elem(val, &s1) : upoly::from_elem(val);
    upoly::UP pu = laurent ? upoly::from_elem(u, &s2) : upoly::from_elem(u);
    long e = integer(field(w, "exponent"));
    // Root multiplicities of d are at most deg d, so u^e with e >= deg d
    // lies in dA as soon as any power does.
    need(e >= upoly::deg(pd) && e <= 4096 && upoly::deg(pd) >= 1);
    upoly::UP acc{Scalar(A->ctx, 1L)}, q, r;
    for (long i = 0; i < e; ++i) acc = upoly::mul(acc, pu);
    upoly::divmod(acc, pd, q, r);
    need(!r.empty());
  } else {
    need(false);
  }
}

void localized_cert(const AlgebraPtr& r, const Verdict& v) {
  const Ring& R = ring_of(r);
  std::vector<AutoPtr> gs{R.alpha, R.gamma};
  if (v.is_holds()) {
    need(kind(v.certificate) == "simple");
    AlgElem u = elem(field(v.certificate, "u"), R.base);
    splitting_cert(R, {{"kind", "splitting"}, {"u", to_string(u)}});
    const json& conds = field(v.certificate, "conditions");
    alpha_cert(R.base, gs, field(conds, "alpha_gamma_simple"), Status::Holds);
    const json& sp = field(conds, "special");
    need(kind(sp) == "no_special");
    bool regular = unit(u) || (is_domain(R.base) && !u.is_zero());
    need(field(sp, "m_zero_only").get<bool>() == regular);
    radical_cert(R, u, field(conds, "radical"), Status::Holds);
    return;
  }
  const std::string& name = v.failed_condition;
  const json& c = v.certificate;
  if (name == "special") {
    need(kind(c) == "special");
    SpecialElement s{elem(field(c, "c"), R.base), integer(field(c, "m")), integer(field(c, "j"))};
    need(!s.c.is_zero() && (s.m != 0 || s.j != 0));
    need(is_special(R.alpha, R.gamma, R.rho, s));
  } else if (name == "alpha_gamma_simple") {
    alpha_cert(R.base, gs, c, Status::Fails);
  } else if (name == "radical") {
    Conformality cf = conformality(r);
    need(cf.u.has_value());
    AlgElem u = splitting_cert(R, cf.certificate);
    radical_cert(R, u, c, Status::Fails);
  } else {
    need(false);
  }
}

// ------------------------------------------------------------ GWA

void gwa_condition(const GwaSpec& t, const std::string& name, const json& c, Status st) {
  const AlgebraPtr& A = t.base;
  std::string k = kind(c);
  if (name == "alpha_simple") {
    alpha_cert(A, {t.alpha}, c, st);
  } else if (name == "outer") {
    if (st == Status::Fails) {
      need(k == "inner_power");
      long m = integer(field(c, "m"));
      need(m >= 1 && is_identity(power(t.alpha, m)));
    } else {
      need(k == "infinite_order" && A->commutative() && !is_identity(t.alpha));
    }
  } else if (name == "regular") {
    if (k == "zero") {
      need(st == Status::Fails && t.u.is_zero());
    } else if (k == "domain_nonzero") {
      need(st == Status::Holds && is_domain(A) && !t.u.is_zero());
    } else if (k == "unit") {
      need(st == Status::Holds && t.u * elem(field(c, "inverse"), A) == one(A));
    } else if (k == "zero_divisor") {
      need(st == Status::Fails && A->commutative() && has_characters(A) && nonunit(t.u));
    } else {
      need(false);
    }
  } else if (name == "comaximal") {
    if (st == Status::Holds) {
      if (k == "u_unit") {
        need(unit(t.u));
        return;
      }
      need(k == "shift_root_bound");
      long bound = integer(field(c, "bound"));
      need(bound >= 1 && bound <= 100000);
      // Bezout identities below the bound; beyond it shifted roots cannot meet.
      AlgElem am = t.u;
      for (long m = 1; m <= bound; ++m) {
        am = apply_auto(t.alpha, am);
        Verdict b = comaximal(t.u, am);
        need(b.is_holds());
        need(t.u * elem(field(b.certificate, "s"), A) + am * elem(field(b.certificate, "t"), A) == one(A));
      }
      return;
    }
    need(k == "not_comaximal");
    long m = integer(field(c, "m"));
    need(m >= 1);
    AlgElem am = apply_auto(power(t.alpha, m), t.u);
    const json& w = field(c, "witness");
    std::string wk = kind(w);
    if (wk == "common_character") {
      need(has_characters(A));
      long l = integer(field(w, "character"));
      auto cu = characters(t.u), ca = characters(am);
      need(l >= 0 && l < static_cast<long>(cu.size()) && cu[l].is_zero() && ca[l].is_zero());
    } else if (wk == "common_factor") {
      need(A->family == Family::Poly || A->family == Family::Laurent);
      AlgElem f = elem(field(w, "factor"), A);
      need(nonunit(f) && !f.is_zero());
      upoly::UP pf = upoly::from_elem(f), q, r;
      need(upoly::deg(pf) >= 1);
      for (const AlgElem& g : {t.u, am}) {
        int sh = 0;
        upoly::UP pg = A->family == Family::Laurent ? upoly::from_elem(g, &sh) : upoly::from_elem(g);
        upoly::divmod(pg, pf, q, r);
        need(r.empty());
      }
    } else if (wk == "both_zero") {
      need(t.u.is_zero() && am.is_zero());
    } else {
      need(false);
    }
  } else {
    need(false);
  }
}

void gwa_cert(const GwaSpec& t, const Verdict& v) {
  if (v.is_fails()) {
    gwa_condition(t, v.failed_condition, v.certificate, Status::Fails);
    return;
  }
  need(kind(v.certificate) == "simple");
  const json& conds = field(v.certificate, "conditions");
  for (const char* name : {"alpha_simple", "outer", "regular", "comaximal"})
    gwa_condition(t, name, field(conds, name), Status::Holds);
}

// ------------------------------------------------------------ torus

void torus_cert(const TorusMatrix& q, const Verdict& v) {
  const json& c = v.certificate;
  size_t n = q.size();
  if (v.is_holds()) {
    need(kind(c) == "trivial_lattice" && integer(field(c, "n")) == static_cast<long>(n));
    return;
  }
  need(kind(c) == "torus_relation");
  const json& m = field(c, "m");
  need(m.is_array() && m.size() == n);
  bool nonzero = false;
  for (const auto& e : m) nonzero = nonzero || integer(e) != 0;
  need(nonzero);
  for (size_t i = 0; i < n; ++i) {
    Scalar prod = q[i][i].pow(0);
    for (size_t r = 0; r < n; ++r) prod *= q[r][i].pow(m[r].get<long>());
    need(prod.is_one());
  }
}

}  // namespace

bool verify_certificate(const Report& r) {
  if (!r.error.empty() || r.verdict.is_inconclusive()) return false;
  const Verdict& v = r.verdict;
  try {
    if (r.check == "torus") {
      need(r.torus.has_value());
      torus_cert(*r.torus, v);
    } else if (r.gwa) {
      gwa_cert(*r.gwa, v);
    } else {
      need(r.ring && r.ring->family == Family::Nested);
      const Ring& R = ring_of(r.ring);
      if (r.check == "conformal") {
        if (v.is_holds())
          splitting_cert(R, v.certificate);
        else
          singular_cert(R.alpha, R.v, R.rho, v.certificate);
      } else if (r.check == "localized_simple") {
        localized_cert(r.ring, v);
      } else if (v.is_fails()) {
        ring_condition(r.ring, v.failed_condition, v.certificate, Status::Fails);
      } else {
        ring_simple_cert(r.ring, v.certificate, Status::Holds);
      }
    }
    return true;
  } catch (const Mismatch&) {
    return false;
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace ambiskew
