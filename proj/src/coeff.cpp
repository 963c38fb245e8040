#include "ambiskew/coeff.hpp"

#include <numeric>

#include "ambiskew/ambiskew.hpp"
#include "ambiskew/simplicity.hpp"
#include "ambiskew/upoly.hpp"

namespace ambiskew {

namespace {

const Scalar& lead_scalar(const AlgElem& a) {
  if (a.alg->family == Family::Nested) return lead_scalar(a.nest[0].c);
  return a.flat[0].second;
}

Scalar one_s(Ctx c) { return Scalar(c, 1L); }

// Builds a diagonal automorphism from per-generator scalars, consumed in the
// order of algebra_generators().
AutoPtr build_diagonal(const AlgebraPtr& a, const std::vector<Scalar>& ks, size_t& pos) {
  switch (a->family) {
    case Family::Field:
      return auto_identity(a);
    case Family::Cyclic:
    case Family::Poly:
      return auto_scale(a, ks[pos++]);
    case Family::Laurent: {
      auto phi = auto_scale(a, ks[pos]);
      pos += 2;
      return phi;
    }
    case Family::Quadratic: {
      const Scalar& k = ks[pos++];
      return auto_sign(a, k.is_one() ? 1 : -1);
    }
    case Family::Nested: {
      AutoPtr in = build_diagonal(a->inner(), ks, pos);
      Scalar ky = ks[pos++], kx = ks[pos++];
      return auto_nested(a, in, ky * gen_y(a), kx * gen_x(a));
    }
  }
  return auto_identity(a);
}

bool normalizes(const AlgElem& v, const AutoPtr& g) {
  if (validate_auto(g)) return false;
  for (const auto& a : algebra_generators(v.alg))
    if (v * a != apply_auto(g, a) * v) return false;
  return apply_auto(g, v) == v;
}

}  // namespace

std::optional<Scalar> scalar_ratio(const AlgElem& p, const AlgElem& q) {
  if (q.is_zero()) {
    if (p.is_zero()) return one_s(q.alg->ctx);
    return std::nullopt;
  }
  if (p.is_zero()) return Scalar(q.alg->ctx);
  Scalar k = lead_scalar(p) / lead_scalar(q);
  if (p == k * q) return k;
  return std::nullopt;
}

std::optional<AutoPtr> normalizing_auto(const AlgElem& v) {
  const AlgebraPtr& S = v.alg;
  if (v.is_zero() || S->commutative()) return auto_identity(S);
  const Ring& R = ring_of(S);
  std::optional<AutoPtr> out;
  if (v.in_degree_zero()) {
    // v = a in the base: a y = c_y alpha(a) y and a x = x beta^-1(a).
    const AlgElem& a = v.nest[0].c;
    auto gin = normalizing_auto(a);
    if (!gin) return std::nullopt;
    AlgElem aa = apply_auto(R.alpha, a), ba = apply_auto(R.beta_inv, a);
    std::optional<AlgElem> cy, cx;
    if (auto k = scalar_ratio(a, aa)) {
      cy = scalar(R.base, *k);
    } else if (auto inv = unit_check(aa).inverse) {
      cy = a * *inv;
    }
    if (auto k = scalar_ratio(ba, a)) {
      cx = scalar(R.base, *k);
    } else if (auto inv = unit_check(a).inverse) {
      cx = ba * *inv;
    }
    if (!cy || !cx) return std::nullopt;
    out = auto_nested(S, *gin, nested_term(S, 0, 1, *cy), nested_term(S, 1, 0, *cx));
  } else {
    std::vector<Scalar> ks;
    for (const auto& g : algebra_generators(S)) {
      auto k = scalar_ratio(v * g, g * v);
      if (!k || k->is_zero()) return std::nullopt;
      ks.push_back(*k);
    }
    size_t pos = 0;
    out = build_diagonal(S, ks, pos);
  }
  if (!normalizes(v, *out)) return std::nullopt;
  return out;
}

// ------------------------------------------------------------ alpha-simplicity

namespace {

json alpha_ideal(const AlgElem& g, const std::vector<AlgElem>& mult) {
  json m = json::array();
  for (const auto& h : mult) m.push_back(to_string(h));
  return {{"kind", "alpha_ideal"}, {"generator", to_string(g)}, {"multipliers", m}};
}

// a with lam = eps^a, or -1.
long cyclic_shift(const Algebra& A, const Scalar& lam) {
  for (int a = 0; a < A.n; ++a)
    if (A.eps.pow(a) == lam) return a;
  return -1;
}

Verdict alpha_simple_poly(const AlgebraPtr& A, const std::vector<AutoPtr>& gs) {
  Ctx ctx = A->ctx;
  bool char0 = ctx->characteristic == 0;
  for (const auto& g : gs)
    if (char0 && g->lam.is_one() && !g->shift.is_zero())
      return Verdict::holds({{"kind", "alpha_simple"}, {"argument", "shift"},
                             {"shift", g->shift.str()}});
  // Common fixed point t0 of every map t -> lam t + c.
  std::optional<Scalar> t0;
  bool all_fix = true;
  for (const auto& g : gs) {
    if (g->lam.is_one()) {
      if (!g->shift.is_zero()) all_fix = false;
      continue;
    }
    Scalar p = g->shift / (one_s(ctx) - g->lam);
    if (t0 && *t0 != p) all_fix = false;
    t0 = p;
  }
  if (all_fix) {
    Scalar c = t0 ? *t0 : Scalar(ctx);
    AlgElem gen = generator(A) - scalar(A, c);
    std::vector<AlgElem> mult;
    for (const auto& g : gs) mult.push_back(scalar(A, g->lam));
    Verdict v = Verdict::fails("alpha_simple", alpha_ideal(gen, mult));
    v.reason = "common fixed point";
    return v;
  }
  if (!char0) {
    // Pure shifts by F_p-multiples of one c preserve t^p - c^(p-1) t.
    std::optional<Scalar> c0;
    bool ok = true;
    for (const auto& g : gs) {
      if (!g->lam.is_one()) {
        ok = false;
        break;
      }
      if (g->shift.is_zero()) continue;
      if (!c0) c0 = g->shift;
      if (!(g->shift / *c0).is_rational()) ok = false;
    }
    if (ok && c0) {
      long p = ctx->characteristic;
      AlgElem gen = monomial(A, static_cast<int>(p), one_s(ctx)) - monomial(A, 1, c0->pow(p - 1));
      std::vector<AlgElem> mult(gs.size(), one(A));
      return Verdict::fails("alpha_simple", alpha_ideal(gen, mult));
    }
  }
  return Verdict::inconclusive("no alpha-simplicity decision for this set of affine maps");
}

}  // namespace

Verdict alpha_simple(const AlgebraPtr& A, const std::vector<AutoPtr>& gs, const Bounds& bounds) {
  if (gs.empty()) throw MathError("alpha_simple needs at least one automorphism");
  Ctx ctx = A->ctx;
  switch (A->family) {
    case Family::Field:
      return Verdict::holds({{"kind", "alpha_simple"}, {"argument", "field"}});
    case Family::Quadratic: {
      if (!A->root)
        return Verdict::holds({{"kind", "alpha_simple"}, {"argument", "field"}});
      for (const auto& g : gs)
        if (g->sign == -1)
          return Verdict::holds({{"kind", "alpha_simple"}, {"argument", "swaps_characters"}});
      AlgElem gen = generator(A) - scalar(A, *A->root);
      return Verdict::fails("alpha_simple", alpha_ideal(gen, std::vector<AlgElem>(gs.size(), one(A))));
    }
    case Family::Cyclic: {
      long d = A->n;
      for (const auto& g : gs) {
        long a = cyclic_shift(*A, g->lam);
        if (a < 0) return Verdict::inconclusive("automorphism scale is not a power of epsilon");
        d = std::gcd(d, a);
      }
      if (d == 1)
        return Verdict::holds({{"kind", "alpha_simple"}, {"argument", "transitive_characters"}});
      AlgElem gen = one(A) - monomial(A, static_cast<int>(A->n / d), one_s(ctx));
      return Verdict::fails("alpha_simple", alpha_ideal(gen, std::vector<AlgElem>(gs.size(), one(A))));
    }
    case Family::Laurent: {
      long M = 1;
      for (const auto& g : gs) {
        RootOrder o = root_of_unity_order(g->lam);
        if (o.kind == RootOrder::Infinite)
          return Verdict::holds({{"kind", "alpha_simple"}, {"argument", "non_torsion_scale"},
                                 {"scale", g->lam.str()}});
        M = std::lcm(M, o.order);
      }
      AlgElem gen = monomial(A, static_cast<int>(M), one_s(ctx)) - one(A);
      return Verdict::fails("alpha_simple", alpha_ideal(gen, std::vector<AlgElem>(gs.size(), one(A))));
    }
    case Family::Poly:
      return alpha_simple_poly(A, gs);
    case Family::Nested:
      break;
  }
  bool all_id = true;
  for (const auto& g : gs) all_id = all_id && is_identity(g);
  Verdict sv = ring_simple(A, bounds);
  if (sv.is_holds())
    return Verdict::holds({{"kind", "alpha_simple"}, {"argument", "simple_ring"},
                           {"inner", sv.certificate}});
  if (all_id && sv.is_fails()) {
    Verdict v = Verdict::fails("alpha_simple", {{"kind", "not_simple"}, {"inner", sv.certificate}});
    v.reason = "automorphisms are trivial and the ring is not simple";
    return v;
  }
  // R(B, id, c, 1) with c a nonzero scalar is B tensor the Weyl algebra in
  // characteristic 0; stable ideals are generated by stable ideals of B.
  const Ring& R = ring_of(A);
  auto vc = R.v.as_scalar();
  if (ctx->characteristic == 0 && is_identity(R.alpha) && is_identity(R.gamma) && R.rho.is_one() &&
      vc && !vc->is_zero() && R.base->commutative()) {
    std::vector<AutoPtr> in;
    for (const auto& g : gs) {
      if (!is_diagonal(g)) return Verdict::inconclusive("non-diagonal automorphism of a Weyl tensor factor");
      in.push_back(g->inner);
    }
    Verdict iv = alpha_simple(R.base, in, bounds);
    json cert = {{"kind", "weyl_tensor"}, {"inner", iv.certificate}};
    if (iv.is_holds()) return Verdict::holds(cert);
    if (iv.is_fails()) return Verdict::fails("alpha_simple", cert);
    return iv;
  }
  return Verdict::inconclusive("alpha-simplicity of this nested base is not decided");
}

// ------------------------------------------------------------ splitting

namespace {

Scalar flat_eigen(const AutoPtr& phi, int k) {
  if (phi->alg->family == Family::Field) return one_s(phi->alg->ctx);
  return phi->lam.pow(k);
}

// Solves sum_c x_c * cols[c] = rhs.
std::optional<std::vector<Scalar>> solve_columns(const std::vector<upoly::UP>& cols,
                                                 const upoly::UP& rhs, Ctx ctx) {
  size_t rows = rhs.size();
  for (const auto& c : cols) rows = std::max(rows, c.size());
  std::vector<std::vector<Scalar>> M(rows, std::vector<Scalar>(cols.size(), Scalar(ctx)));
  std::vector<Scalar> b(rows, Scalar(ctx));
  for (size_t c = 0; c < cols.size(); ++c)
    for (size_t r = 0; r < cols[c].size(); ++r) M[r][c] = cols[c][r];
  for (size_t r = 0; r < rhs.size(); ++r) b[r] = rhs[r];
  return upoly::solve_linear(std::move(M), std::move(b), cols.size(), ctx);
}

SplitResult diagonal_split(const AutoPtr& alpha, const AlgElem& v, const Scalar& rho) {
  SplitResult out;
  AlgElem u(v.alg);
  for (const auto& [k, c] : v.flat) {
    Scalar lam = flat_eigen(alpha, k);
    Scalar d = one_s(v.ctx()) - rho * lam;
    if (d.is_zero()) {
      out.status = Status::Fails;
      out.certificate = {{"kind", "singular_component"}, {"basis_index", k},
                         {"eigenvalue", lam.str()}, {"coefficient", c.str()}};
      out.reason = "rho * alpha-eigenvalue = 1 on a basis element in the support of v";
      return out;
    }
    u.flat.emplace_back(k, c / d);
  }
  out.status = Status::Holds;
  out.u = u;
  return out;
}

SplitResult poly_affine_split(const AutoPtr& alpha, const AlgElem& v, const Scalar& rho) {
  using namespace upoly;
  const AlgebraPtr& A = v.alg;
  Ctx ctx = A->ctx;
  SplitResult out;
  Scalar lam = alpha->lam, c = alpha->shift;
  UP pv = from_elem(v);
  if (!lam.is_one()) {
    // Eigenbasis (t - t0)^k with t0 the fixed point.
    Scalar t0 = c / (one_s(ctx) - lam);
    UP pv0 = compose_affine(pv, one_s(ctx), t0);
    UP pu0(pv0.size(), Scalar(ctx));
    for (size_t k = 0; k < pv0.size(); ++k) {
      if (pv0[k].is_zero()) continue;
      Scalar d = one_s(ctx) - rho * lam.pow(static_cast<long>(k));
      if (d.is_zero()) {
        out.status = Status::Fails;
        out.certificate = {{"kind", "singular_component"}, {"basis_index", k},
                           {"center", t0.str()}, {"eigenvalue", lam.pow(static_cast<long>(k)).str()},
                           {"coefficient", pv0[k].str()}};
        out.reason = "rho * alpha-eigenvalue = 1 on an eigenvector in the support of v";
        return out;
      }
      pu0[k] = pv0[k] / d;
    }
    trim(pu0);
    out.status = Status::Holds;
    out.u = to_elem(A, compose_affine(pu0, one_s(ctx), -t0));
    return out;
  }
  long p = ctx->characteristic;
  if (p > 0 && rho.is_one()) {
    // sum_{i<p} alpha^i(u - alpha(u)) = 0, so v must have zero trace.
    AlgElem tr(A), cur = v;
    for (long i = 0; i < p; ++i) {
      tr = tr + cur;
      cur = apply_auto(alpha, cur);
    }
    if (!tr.is_zero()) {
      out.status = Status::Fails;
      out.certificate = {{"kind", "periodic_obstruction"}, {"period", p}, {"value", to_string(tr)}};
      out.reason = "rho^k alpha^k = id and v^(k) != 0";
      return out;
    }
  }
  int window = deg(pv) + (rho.is_one() ? (p > 0 ? static_cast<int>(p) : 1) : 0);
  std::vector<UP> cols;
  for (int k = 0; k <= window; ++k) {
    AlgElem b = monomial(A, k, one_s(ctx));
    cols.push_back(from_elem(b - rho * apply_auto(alpha, b)));
  }
  auto sol = solve_columns(cols, pv, ctx);
  if (!sol) {
    out.reason = "no splitting element of degree <= " + std::to_string(window);
    return out;
  }
  trim(*sol);
  out.status = Status::Holds;
  out.u = to_elem(A, *sol);
  return out;
}

SplitResult nested_split(const AutoPtr& alpha, const AlgElem& v, const Scalar& rho) {
  const AlgebraPtr& S = v.alg;
  SplitResult out;
  auto cy = alpha->img_y.nest.size() == 1 ? alpha->img_y.nest[0].c.as_scalar() : std::nullopt;
  auto cx = alpha->img_x.nest.size() == 1 ? alpha->img_x.nest[0].c.as_scalar() : std::nullopt;
  bool scalar_images = cy && cx;
  if (!v.in_degree_zero() && !scalar_images) {
    out.reason = "v has components off degree zero and alpha has non-scalar images";
    return out;
  }
  AlgElem u(S);
  for (const auto& t : v.nest) {
    // Bidegree (i, j) component: v_ij = u_ij - rho cx^i cy^j alpha(u_ij).
    Scalar r = rho;
    if (scalar_images) r = rho * cx->pow(t.i) * cy->pow(t.j);
    SplitResult in = linear_split(alpha->inner, t.c, r);
    if (in.status != Status::Holds) {
      out.status = in.status;
      out.reason = in.reason;
      if (in.status == Status::Fails)
        out.certificate = {{"kind", "projection"}, {"component", {t.i, t.j}},
                           {"rho", r.str()}, {"inner", in.certificate}};
      return out;
    }
    u = u + nested_term(S, t.i, t.j, *in.u);
  }
  out.status = Status::Holds;
  out.u = u;
  return out;
}

}  // namespace

SplitResult linear_split(const AutoPtr& alpha, const AlgElem& v, const Scalar& rho) {
  if (v.is_zero()) {
    SplitResult out;
    out.status = Status::Holds;
    out.u = zero(v.alg);
    return out;
  }
  switch (v.alg->family) {
    case Family::Poly:
      if (!alpha->shift.is_zero()) return poly_affine_split(alpha, v, rho);
      return diagonal_split(alpha, v, rho);
    case Family::Nested:
      return nested_split(alpha, v, rho);
    default:
      return diagonal_split(alpha, v, rho);
  }
}

SplitResult solve_splitting(const AlgebraPtr& A, const AutoPtr& alpha, const AutoPtr& gamma,
                            const AlgElem& v0, const Scalar& rho) {
  AlgElem v = v0.alg ? v0 : zero(A);
  SplitResult out = linear_split(alpha, v, rho);
  if (out.status != Status::Holds) return out;
  const AlgElem& u = *out.u;
  bool normal = apply_auto(gamma, u) == u;
  for (const auto& g : algebra_generators(A))
    normal = normal && u * g == apply_auto(gamma, g) * u;
  if (!normal) {
    out.status = Status::Inconclusive;
    out.u.reset();
    out.reason = "the linear solution of v = u - rho*alpha(u) is not gamma-normal";
    return out;
  }
  out.certificate = {{"kind", "splitting"}, {"u", to_string(u)}};
  return out;
}

// ------------------------------------------------------------ characters

AlgElem from_characters(const AlgebraPtr& A, const std::vector<Scalar>& vals) {
  Ctx ctx = A->ctx;
  switch (A->family) {
    case Family::Field:
      return scalar(A, vals.at(0));
    case Family::Cyclic: {
      AlgElem r(A);
      Scalar ninv = Scalar(ctx, static_cast<long>(A->n)).inv();
      for (int k = 0; k < A->n; ++k) {
        Scalar c(ctx);
        for (int l = 0; l < A->n; ++l) c += vals[l] * A->eps.pow(-static_cast<long>(l) * k);
        c *= ninv;
        if (!c.is_zero()) r.flat.emplace_back(k, c);
      }
      return r;
    }
    case Family::Quadratic: {
      if (!A->root) break;
      Scalar half = Scalar(ctx, 2L).inv();
      Scalar a = (vals[0] + vals[1]) * half, b = (vals[0] - vals[1]) * half / *A->root;
      return scalar(A, a) + monomial(A, 1, b);
    }
    default:
      break;
  }
  throw MathError("algebra has no character decomposition");
}

// ------------------------------------------------------------ ideals

Verdict radical_membership(const AlgElem& u, const AlgElem& d) {
  const AlgebraPtr& A = u.alg;
  auto holds = [](long n, const AlgElem& h) {
    return Verdict::holds({{"kind", "radical_member"}, {"n", n}, {"h", to_string(h)}});
  };
  if (u.is_zero()) return holds(1, zero(A));
  if (has_characters(A)) {
    auto cu = characters(u), cd = characters(d);
    std::vector<Scalar> h(cu.size(), Scalar(A->ctx));
    bool unit = true;
    for (size_t l = 0; l < cu.size(); ++l) {
      if (cd[l].is_zero()) {
        unit = false;
        if (!cu[l].is_zero())
          return Verdict::fails("radical", {{"kind", "character"}, {"character", l}});
      } else {
        h[l] = cu[l] / cd[l];
      }
    }
    if (unit) {
      for (size_t l = 0; l < cd.size(); ++l) h[l] = cd[l].inv();
      return holds(0, from_characters(A, h));
    }
    return holds(1, from_characters(A, h));
  }
  UnitCheck du = unit_check(d);
  if (du.status == Status::Holds) return holds(0, *du.inverse);
  if (d.is_zero()) {
    if (is_domain(A)) return Verdict::fails("radical", {{"kind", "nonzero_power"}});
    return Verdict::inconclusive("nilpotence is not decided in this algebra");
  }
  if (A->family == Family::Poly || A->family == Family::Laurent) {
    using namespace upoly;
    bool laurent = A->family == Family::Laurent;
    int sd = 0, su = 0;
    UP pd = laurent ? from_elem(d, &sd) : from_elem(d);
    UP pu = laurent ? from_elem(u, &su) : from_elem(u);
    UP acc{one_s(A->ctx)}, q, r;
    int N = deg(pd);
    for (int n = 0; n <= N; ++n) {
      divmod(acc, pd, q, r);
      if (r.empty()) return holds(n, to_elem(A, q, laurent ? n * su - sd : 0));
      acc = mul(acc, pu);
    }
    divmod(acc, pd, q, r);   // acc = pu^(N+1); multiplicities never exceed N
    return Verdict::fails("radical", {{"kind", "radical"}, {"exponent", N + 1},
                                      {"remainder", to_string(to_elem(A, r))}});
  }
  return Verdict::inconclusive("radical membership is not decided in this algebra");
}

Verdict comaximal(const AlgElem& a, const AlgElem& b) {
  const AlgebraPtr& A = a.alg;
  auto holds = [](const AlgElem& s, const AlgElem& t) {
    return Verdict::holds({{"kind", "bezout"}, {"s", to_string(s)}, {"t", to_string(t)}});
  };
  if (has_characters(A)) {
    auto ca = characters(a), cb = characters(b);
    std::vector<Scalar> s(ca.size(), Scalar(A->ctx)), t = s;
    for (size_t l = 0; l < ca.size(); ++l) {
      if (!ca[l].is_zero())
        s[l] = ca[l].inv();
      else if (!cb[l].is_zero())
        t[l] = cb[l].inv();
      else
        return Verdict::fails("comaximal", {{"kind", "common_character"}, {"character", l}});
    }
    return holds(from_characters(A, s), from_characters(A, t));
  }
  if (auto ua = unit_check(a).inverse) return holds(*ua, zero(A));
  if (auto ub = unit_check(b).inverse) return holds(zero(A), *ub);
  if (A->family == Family::Poly || A->family == Family::Laurent) {
    using namespace upoly;
    bool laurent = A->family == Family::Laurent;
    int sa = 0, sb = 0;
    UP pa = laurent ? from_elem(a, &sa) : from_elem(a);
    UP pb = laurent ? from_elem(b, &sb) : from_elem(b);
    UP s, t;
    UP g = xgcd(pa, pb, s, t);
    if (deg(g) == 0) return holds(to_elem(A, s, -sa), to_elem(A, t, -sb));
    return Verdict::fails("comaximal", {{"kind", "common_factor"},
                                        {"factor", to_string(to_elem(A, g))}});
  }
  if (a.is_zero() && b.is_zero()) return Verdict::fails("comaximal", {{"kind", "both_zero"}});
  return Verdict::inconclusive("comaximality is not decided in this algebra");
}

}  // namespace ambiskew
