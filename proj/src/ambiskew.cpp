#include "ambiskew/ambiskew.hpp"

#include <map>

#include "ambiskew/coeff.hpp"

namespace ambiskew {

// ------------------------------------------------------------ ring caches

AlgElem Ring::vm(long m) const {
  if (m < 0) throw MathError("v^(m) needs m >= 0");
  std::lock_guard<std::recursive_mutex> lock(memo_mutex);
  if (vm_cache.empty()) vm_cache.push_back(zero(base));
  // v^(m+1) = v + rho * alpha(v^(m))
  while (static_cast<long>(vm_cache.size()) <= m)
    vm_cache.push_back(v + rho * apply_auto(alpha, vm_cache.back()));
  return vm_cache[m];
}

AutoPtr Ring::beta_inv_power(long k) const {
  std::lock_guard<std::recursive_mutex> lock(memo_mutex);
  auto it = beta_inv_pow.find(k);
  if (it != beta_inv_pow.end()) return it->second;
  AutoPtr p = k == 0 ? auto_identity(base) : compose(beta_inv, beta_inv_power(k - 1));
  beta_inv_pow.emplace(k, p);
  return p;
}

// ------------------------------------------------------------ construction

const Ring& ring_of(const AlgebraPtr& r) {
  if (!r || r->family != Family::Nested) throw MathError("not an ambiskew ring");
  return *r->ring;
}

AlgElem gen_x(const AlgebraPtr& r) { return nested_term(r, 1, 0, one(r->inner())); }
AlgElem gen_y(const AlgebraPtr& r) { return nested_term(r, 0, 1, one(r->inner())); }
AlgElem x_pow(const AlgebraPtr& r, int i) { return nested_term(r, i, 0, one(r->inner())); }
AlgElem y_pow(const AlgebraPtr& r, int j) { return nested_term(r, 0, j, one(r->inner())); }

AlgebraPtr construct(const AmbiskewSpec& spec) {
  if (!spec.base || !spec.alpha) throw ValidationError("ring needs a base and alpha");
  if (spec.rho.is_zero()) throw ValidationError("rho must be nonzero");
  if (spec.alpha->alg != spec.base) throw ValidationError("alpha is not an automorphism of the base");
  if (auto e = validate_auto(spec.alpha)) throw ValidationError("alpha: " + *e);
  AlgElem v = spec.v.alg ? embed(spec.base, spec.v) : zero(spec.base);

  AutoPtr gamma = spec.gamma;
  if (v.is_zero() && !gamma) gamma = auto_identity(spec.base);
  if (!gamma) {
    auto g = normalizing_auto(v);
    if (!g) throw ValidationError("cannot determine gamma with v*a = gamma(a)*v; declare gamma");
    gamma = *g;
  }
  if (gamma->alg != spec.base) throw ValidationError("gamma is not an automorphism of the base");
  if (auto e = validate_auto(gamma)) throw ValidationError("gamma: " + *e);
  if (!auto_equal(compose(spec.alpha, gamma), compose(gamma, spec.alpha)))
    throw ValidationError("alpha and gamma do not commute");
  for (const auto& g : algebra_generators(spec.base))
    if (v * g != apply_auto(gamma, g) * v) throw ValidationError("v is not gamma-normal");
  if (apply_auto(gamma, v) != v) throw ValidationError("gamma(v) != v");

  auto ring = std::make_shared<Ring>();
  ring->name = spec.name;
  ring->base = spec.base;
  ring->alpha = spec.alpha;
  ring->gamma = gamma;
  ring->alpha_inv = inverse(spec.alpha);
  ring->beta = compose(ring->alpha_inv, gamma);
  ring->beta_inv = inverse(ring->beta);
  ring->v = v;
  ring->rho = spec.rho;
  ring->xname = spec.xname;
  ring->yname = spec.yname;

  auto alg = std::make_shared<Algebra>();
  alg->family = Family::Nested;
  alg->ctx = spec.base->ctx;
  alg->name = spec.name;
  alg->ring = ring;
  return alg;
}

// ------------------------------------------------------------ multiplication

namespace {

using Acc = std::map<std::pair<int, int>, AlgElem>;

void acc_add(Acc& acc, int i, int j, const AlgElem& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = acc.try_emplace({i, j}, c);
  if (!fresh) it->second = it->second + c;
}

std::vector<NTerm> acc_terms(const Acc& acc) {
  std::vector<NTerm> out;
  for (const auto& [k, c] : acc)
    if (!c.is_zero()) out.push_back(NTerm{k.first, k.second, c});
  return out;
}

// Normal form of y^j x^k with coefficients in the base.
const std::vector<NTerm>& yx_block(const Ring& R, int j, int k) {
  std::lock_guard<std::recursive_mutex> lock(R.memo_mutex);
  auto it = R.yx_memo.find({j, k});
  if (it != R.yx_memo.end()) return it->second;
  std::vector<NTerm> out;
  if (j == 0 || k == 0) {
    out.push_back(NTerm{k, j, one(R.base)});
  } else {
    // y^j x^k = rho^-j x (y^j x^(k-1)) - rho^-j v^(j) (y^(j-1) x^(k-1))
    Scalar ri = R.rho.pow(-j);
    Acc acc;
    for (const auto& t : yx_block(R, j, k - 1)) acc_add(acc, t.i + 1, t.j, ri * t.c);
    AlgElem vj = R.vm(j);
    for (const auto& t : yx_block(R, j - 1, k - 1))
      acc_add(acc, t.i, t.j, -(ri * (apply_auto(R.beta_inv_power(t.i), vj) * t.c)));
    out = acc_terms(acc);
  }
  return R.yx_memo.emplace(std::make_pair(j, k), std::move(out)).first->second;
}

}  // namespace

AlgElem r_mul(const AlgElem& f, const AlgElem& g) {
  if (f.alg != g.alg) throw MathError("mixed-ring product");
  const Ring& R = ring_of(f.alg);
  Acc acc;
  std::map<int, AutoPtr> alpha_pow;
  auto alpha_p = [&](int q) -> const AutoPtr& {
    auto it = alpha_pow.find(q);
    if (it == alpha_pow.end()) it = alpha_pow.emplace(q, power(R.alpha, q)).first;
    return it->second;
  };
  for (const auto& a : f.nest)
    for (const auto& b : g.nest) {
      // x^i a y^j * x^k b y^l = sum x^(i+p) beta^-p(a) c alpha^q(b) y^(q+l)
      for (const auto& t : yx_block(R, a.j, b.i)) {
        AlgElem c = apply_auto(R.beta_inv_power(t.i), a.c) * t.c * apply_auto(alpha_p(t.j), b.c);
        acc_add(acc, a.i + t.i, t.j + b.j, c);
      }
    }
  AlgElem r(f.alg);
  r.nest = acc_terms(acc);
  return r;
}

AlgElem v_m(const Ring& r, long m) { return r.vm(m); }

AlgElem w_element(const AlgebraPtr& r) { return nested_term(r, 1, 1, one(r->inner())); }

AlgElem alpha_power_w(const AlgebraPtr& r, long m) {
  const Ring& R = ring_of(r);
  AlgElem w = w_element(r);
  if (m >= 0) return R.rho.pow(-m) * (w - embed(r, R.vm(m)));
  long l = -m;
  // alpha^-l(w) = rho^l w + alpha^-l(v^(l))
  return R.rho.pow(l) * w + embed(r, apply_auto(power(R.alpha, -l), R.vm(l)));
}

// ------------------------------------------------------------ conformality

Conformality conformality(const AlgebraPtr& r) {
  const Ring& R = ring_of(r);
  Conformality out;
  SplitResult s = solve_splitting(R.base, R.alpha, R.gamma, R.v, R.rho);
  out.status = s.status;
  out.certificate = s.certificate;
  out.reason = s.reason;
  if (s.status == Status::Holds) {
    out.u = *s.u;
    out.z = w_element(r) - embed(r, *s.u);
  }
  return out;
}

AutoPtr extend_alpha(const AlgebraPtr& r, const Scalar& lambda, const Scalar& mu) {
  const Ring& R = ring_of(r);
  if (lambda.is_zero() || mu.is_zero()) throw ValidationError("extension scalars must be nonzero");
  AutoPtr phi = auto_nested(r, R.alpha, lambda * gen_y(r), (mu / lambda) * gen_x(r));
  if (auto e = validate_auto(phi)) throw ValidationError("extension of alpha: " + *e);
  return phi;
}

AutoPtr extend_gamma(const AlgebraPtr& r) {
  const Ring& R = ring_of(r);
  AutoPtr phi = auto_nested(r, R.gamma, R.rho * gen_y(r), R.rho.inv() * gen_x(r));
  if (auto e = validate_auto(phi)) throw ValidationError("extension of gamma: " + *e);
  return phi;
}

std::optional<int> homogeneous_degree(const AlgElem& f) {
  if (f.alg->family != Family::Nested) return 0;
  if (f.is_zero()) return 0;
  int d = f.nest[0].j - f.nest[0].i;
  for (const auto& t : f.nest)
    if (t.j - t.i != d) return std::nullopt;
  return d;
}

std::vector<AlgebraPtr> tower(const AlgebraPtr& r) {
  std::vector<AlgebraPtr> out;
  for (AlgebraPtr a = r; a; a = a->inner()) out.insert(out.begin(), a);
  return out;
}

}  // namespace ambiskew
