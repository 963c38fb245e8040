#include "ambiskew/algebra.hpp"

#include <algorithm>

#include "ambiskew/ambiskew.hpp"

namespace ambiskew {

const char* family_name(Family f) {
  switch (f) {
    case Family::Field: return "field";
    case Family::Cyclic: return "cyclic_group";
    case Family::Laurent: return "laurent";
    case Family::Poly: return "poly";
    case Family::Quadratic: return "quadratic";
    case Family::Nested: return "nested";
  }
  return "?";
}

AlgebraPtr Algebra::inner() const { return ring ? ring->base : nullptr; }

AlgebraPtr make_field(Ctx ctx, std::string name) {
  auto a = std::make_shared<Algebra>();
  a->family = Family::Field;
  a->ctx = ctx;
  a->name = std::move(name);
  return a;
}

AlgebraPtr make_cyclic(Ctx ctx, int n, const Scalar& eps, std::string gen, std::string name) {
  if (n < 1) throw MathError("cyclic group order must be positive");
  RootOrder o = root_of_unity_order(eps);
  if (o.kind != RootOrder::Finite || o.order != n)
    throw MathError("epsilon must be a primitive " + std::to_string(n) + "-th root of unity");
  auto a = std::make_shared<Algebra>();
  a->family = Family::Cyclic;
  a->ctx = ctx;
  a->n = n;
  a->eps = eps;
  a->gen = std::move(gen);
  a->name = std::move(name);
  return a;
}

AlgebraPtr make_laurent(Ctx ctx, std::string gen, std::string name) {
  auto a = std::make_shared<Algebra>();
  a->family = Family::Laurent;
  a->ctx = ctx;
  a->gen = std::move(gen);
  a->name = std::move(name);
  return a;
}

AlgebraPtr make_poly(Ctx ctx, std::string gen, std::string name) {
  auto a = std::make_shared<Algebra>();
  a->family = Family::Poly;
  a->ctx = ctx;
  a->gen = std::move(gen);
  a->name = std::move(name);
  return a;
}

AlgebraPtr make_quadratic(Ctx ctx, const Scalar& d, std::string gen, std::string name) {
  if (d.is_zero()) throw MathError("quadratic algebra needs d != 0");
  auto a = std::make_shared<Algebra>();
  a->family = Family::Quadratic;
  a->ctx = ctx;
  a->d = d;
  a->gen = std::move(gen);
  a->name = std::move(name);
  // Split exactly when d is the square of a rational constant.
  if (d.is_rational() && ctx->characteristic == 0) {
    mpq_class q = d.rational_value();
    if (q > 0 && mpz_perfect_square_p(q.get_num().get_mpz_t()) &&
        mpz_perfect_square_p(q.get_den().get_mpz_t())) {
      mpz_class rn = sqrt(q.get_num()), rd = sqrt(q.get_den());
      a->root = Scalar(ctx, mpq_class(rn, rd));
    }
  }
  return a;
}

// ----------------------------------------------------------------- elements

Scalar AlgElem::coeff(int k) const {
  for (const auto& [i, c] : flat)
    if (i == k) return c;
  return Scalar(alg->ctx);
}

AlgElem AlgElem::coeff(int i, int j) const {
  for (const auto& t : nest)
    if (t.i == i && t.j == j) return t.c;
  return zero(alg->inner());
}

bool AlgElem::in_degree_zero() const {
  return nest.empty() || (nest.size() == 1 && nest[0].i == 0 && nest[0].j == 0);
}

std::optional<Scalar> AlgElem::as_scalar() const {
  if (is_zero()) return Scalar(alg->ctx);
  if (alg->family == Family::Nested) {
    if (!in_degree_zero()) return std::nullopt;
    return nest[0].c.as_scalar();
  }
  if (flat.size() == 1 && flat[0].first == 0) return flat[0].second;
  return std::nullopt;
}

bool AlgElem::operator==(const AlgElem& o) const {
  if (flat.size() != o.flat.size() || nest.size() != o.nest.size()) return false;
  for (size_t k = 0; k < flat.size(); ++k)
    if (flat[k].first != o.flat[k].first || flat[k].second != o.flat[k].second) return false;
  for (size_t k = 0; k < nest.size(); ++k)
    if (nest[k].i != o.nest[k].i || nest[k].j != o.nest[k].j || nest[k].c != o.nest[k].c)
      return false;
  return true;
}

AlgElem zero(const AlgebraPtr& a) { return AlgElem(a); }

AlgElem scalar(const AlgebraPtr& a, const Scalar& c) {
  AlgElem e(a);
  if (c.is_zero()) return e;
  if (a->family == Family::Nested)
    e.nest.push_back(NTerm{0, 0, scalar(a->inner(), c)});
  else
    e.flat.emplace_back(0, c);
  return e;
}

AlgElem one(const AlgebraPtr& a) { return scalar(a, Scalar(a->ctx, 1L)); }

AlgElem monomial(const AlgebraPtr& a, int k, const Scalar& c) {
  AlgElem e(a);
  if (c.is_zero()) return e;
  switch (a->family) {
    case Family::Field:
      if (k != 0) throw MathError("field has a single basis element");
      break;
    case Family::Cyclic:
      k = ((k % a->n) + a->n) % a->n;
      break;
    case Family::Poly:
      if (k < 0) throw MathError("negative exponent in a polynomial algebra");
      break;
    case Family::Quadratic:
      if (k < 0 || k > 1) {
        // s^k = d^(k/2) s^(k mod 2)
        int kk = ((k % 2) + 2) % 2;
        Scalar f = a->d.pow((k - kk) / 2);
        e.flat.emplace_back(kk, c * f);
        return e;
      }
      break;
    case Family::Laurent:
      break;
    case Family::Nested:
      throw MathError("monomial() applies to flat families");
  }
  e.flat.emplace_back(k, c);
  return e;
}

AlgElem nested_term(const AlgebraPtr& a, int i, int j, const AlgElem& c) {
  AlgElem e(a);
  if (!c.is_zero()) e.nest.push_back(NTerm{i, j, embed(a->inner(), c)});
  return e;
}

AlgElem generator(const AlgebraPtr& a) { return monomial(a, 1, Scalar(a->ctx, 1L)); }

AlgElem embed(const AlgebraPtr& a, const AlgElem& e) {
  if (e.alg == a) return e;
  if (e.is_zero()) return zero(a);
  if (a->family == Family::Nested) {
    AlgElem out(a);
    out.nest.push_back(NTerm{0, 0, embed(a->inner(), e)});
    return out;
  }
  if (auto s = e.as_scalar()) return scalar(a, *s);
  throw MathError("element does not belong to algebra " + a->name);
}

namespace {

void check_same(const AlgElem& a, const AlgElem& b) {
  if (a.alg != b.alg) throw MathError("mixed-algebra arithmetic");
}

}  // namespace

AlgElem operator+(const AlgElem& a, const AlgElem& b) {
  check_same(a, b);
  AlgElem r(a.alg);
  if (a.alg->family != Family::Nested) {
    size_t i = 0, j = 0;
    while (i < a.flat.size() || j < b.flat.size()) {
      if (j == b.flat.size() || (i < a.flat.size() && a.flat[i].first < b.flat[j].first)) {
        r.flat.push_back(a.flat[i++]);
      } else if (i == a.flat.size() || b.flat[j].first < a.flat[i].first) {
        r.flat.push_back(b.flat[j++]);
      } else {
        Scalar s = a.flat[i].second + b.flat[j].second;
        if (!s.is_zero()) r.flat.emplace_back(a.flat[i].first, s);
        ++i;
        ++j;
      }
    }
    return r;
  }
  auto key = [](const NTerm& t) { return std::make_pair(t.i, t.j); };
  size_t i = 0, j = 0;
  while (i < a.nest.size() || j < b.nest.size()) {
    if (j == b.nest.size() || (i < a.nest.size() && key(a.nest[i]) < key(b.nest[j]))) {
      r.nest.push_back(a.nest[i++]);
    } else if (i == a.nest.size() || key(b.nest[j]) < key(a.nest[i])) {
      r.nest.push_back(b.nest[j++]);
    } else {
      AlgElem s = a.nest[i].c + b.nest[j].c;
      if (!s.is_zero()) r.nest.push_back(NTerm{a.nest[i].i, a.nest[i].j, s});
      ++i;
      ++j;
    }
  }
  return r;
}

AlgElem operator-(const AlgElem& a) {
  AlgElem r(a);
  for (auto& [k, c] : r.flat) c = -c;
  for (auto& t : r.nest) t.c = -t.c;
  return r;
}

AlgElem operator-(const AlgElem& a, const AlgElem& b) { return a + (-b); }

AlgElem operator*(const Scalar& c, const AlgElem& a) {
  if (c.is_zero()) return AlgElem(a.alg);
  AlgElem r(a);
  for (auto& [k, x] : r.flat) x = c * x;
  for (auto& t : r.nest) t.c = c * t.c;
  return r;
}

AlgElem operator*(const AlgElem& a, const AlgElem& b) {
  check_same(a, b);
  const AlgebraPtr& A = a.alg;
  if (A->family == Family::Nested) return r_mul(a, b);
  if (a.is_zero() || b.is_zero()) return AlgElem(A);
  std::map<int, Scalar> acc;
  for (const auto& [i, ci] : a.flat)
    for (const auto& [j, cj] : b.flat) {
      int k = i + j;
      Scalar c = ci * cj;
      if (A->family == Family::Cyclic) {
        k %= A->n;
      } else if (A->family == Family::Quadratic && k == 2) {
        k = 0;
        c = c * A->d;
      }
      auto it = acc.find(k);
      if (it == acc.end())
        acc.emplace(k, c);
      else
        it->second += c;
    }
  AlgElem r(A);
  for (auto& [k, c] : acc)
    if (!c.is_zero()) r.flat.emplace_back(k, std::move(c));
  return r;
}

AlgElem pow(const AlgElem& a, unsigned e) {
  AlgElem r = one(a.alg), b = a;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

// ------------------------------------------------------------------ printing

namespace {

bool compound(const std::string& s) {
  int depth = 0;
  for (size_t i = 0; i < s.size(); ++i) {
    char ch = s[i];
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (depth == 0 && ch == ' ') return true;
  }
  return false;
}

// Appends coefficient * mono to out, extracting a leading sign.
void append_term(std::string& out, std::string pos, std::string neg, const std::string& mono) {
  bool negative = !pos.empty() && pos[0] == '-' && !compound(neg) && neg[0] != '-';
  std::string body = negative ? neg : pos;
  std::string t;
  if (mono.empty()) {
    t = compound(body) && !out.empty() ? "(" + body + ")" : body;
  } else if (body == "1") {
    t = mono;
  } else {
    t = (compound(body) ? "(" + body + ")" : body) + "*" + mono;
  }
  if (out.empty())
    out = (negative ? "-" : "") + t;
  else
    out += (negative ? " - " : " + ") + t;
}

std::string power_str(const std::string& g, int k) {
  if (k == 0) return "";
  if (k == 1) return g;
  return g + "^" + std::to_string(k);
}

}  // namespace

std::string to_string(const AlgElem& a) {
  if (a.is_zero()) return "0";
  std::string out;
  if (a.alg->family != Family::Nested) {
    for (const auto& [k, c] : a.flat) append_term(out, c.str(), (-c).str(), power_str(a.alg->gen, k));
    return out;
  }
  const Ring& R = *a.alg->ring;
  for (const auto& t : a.nest) {
    std::string mono_left = power_str(R.xname, t.i);
    std::string mono_right = power_str(R.yname, t.j);
    std::string pos = to_string(t.c), neg = to_string(-t.c);
    bool negative = !pos.empty() && pos[0] == '-' && !compound(neg) && neg[0] != '-';
    std::string body = negative ? neg : pos;
    std::vector<std::string> parts;
    if (!mono_left.empty()) parts.push_back(mono_left);
    if (body != "1" || (mono_left.empty() && mono_right.empty()))
      parts.push_back(compound(body) && (!mono_left.empty() || !mono_right.empty() || !out.empty())
                          ? "(" + body + ")"
                          : body);
    if (!mono_right.empty()) parts.push_back(mono_right);
    std::string term;
    for (size_t k = 0; k < parts.size(); ++k) term += (k ? "*" : "") + parts[k];
    if (out.empty())
      out = (negative ? "-" : "") + term;
    else
      out += (negative ? " - " : " + ") + term;
  }
  return out;
}

// ---------------------------------------------------------------- characters

bool has_characters(const AlgebraPtr& a) {
  return a->family == Family::Field || a->family == Family::Cyclic ||
         (a->family == Family::Quadratic && a->root);
}

bool is_domain(const AlgebraPtr& a) {
  switch (a->family) {
    case Family::Field:
    case Family::Laurent:
    case Family::Poly:
      return true;
    case Family::Quadratic:
      return !a->root;
    case Family::Cyclic:
      return a->n == 1;
    case Family::Nested:
      return is_domain(a->inner());
  }
  return false;
}

std::vector<Scalar> characters(const AlgElem& a) {
  const AlgebraPtr& A = a.alg;
  std::vector<Scalar> out;
  if (A->family == Family::Field) {
    out.push_back(a.coeff(0));
  } else if (A->family == Family::Cyclic) {
    for (int l = 0; l < A->n; ++l) {
      Scalar val(A->ctx), z = A->eps.pow(l);
      for (const auto& [k, c] : a.flat) val += c * z.pow(k);
      out.push_back(val);
    }
  } else if (A->family == Family::Quadratic && A->root) {
    for (int sgn : {1, -1}) out.push_back(a.coeff(0) + a.coeff(1) * (*A->root) * Scalar(A->ctx, static_cast<long>(sgn)));
  }
  return out;
}

UnitCheck unit_check(const AlgElem& a) {
  const AlgebraPtr& A = a.alg;
  UnitCheck out;
  if (a.is_zero()) {
    out.status = Status::Fails;
    out.witness = {{"reason", "zero"}};
    return out;
  }
  switch (A->family) {
    case Family::Field: {
      out.status = Status::Holds;
      out.inverse = scalar(A, a.coeff(0).inv());
      return out;
    }
    case Family::Cyclic: {
      auto ch = characters(a);
      for (int l = 0; l < A->n; ++l)
        if (ch[l].is_zero()) {
          out.status = Status::Fails;
          out.witness = {{"reason", "character"}, {"character", l}};
          return out;
        }
      AlgElem inv(A);
      Scalar n_inv = Scalar(A->ctx, static_cast<long>(A->n)).inv();
      for (int k = 0; k < A->n; ++k) {
        Scalar c(A->ctx);
        for (int l = 0; l < A->n; ++l) c += ch[l].inv() * A->eps.pow(-static_cast<long>(l) * k);
        c *= n_inv;
        if (!c.is_zero()) inv.flat.emplace_back(k, c);
      }
      out.status = Status::Holds;
      out.inverse = inv;
      return out;
    }
    case Family::Laurent: {
      if (a.flat.size() == 1) {
        out.status = Status::Holds;
        out.inverse = monomial(A, -a.flat[0].first, a.flat[0].second.inv());
      } else {
        out.status = Status::Fails;
        out.witness = {{"reason", "support"}, {"terms", a.flat.size()}};
      }
      return out;
    }
    case Family::Poly: {
      if (a.flat.size() == 1 && a.flat[0].first == 0) {
        out.status = Status::Holds;
        out.inverse = scalar(A, a.flat[0].second.inv());
      } else {
        out.status = Status::Fails;
        out.witness = {{"reason", "degree"}, {"degree", a.flat.back().first}};
      }
      return out;
    }
    case Family::Quadratic: {
      Scalar x = a.coeff(0), y = a.coeff(1);
      Scalar norm = x * x - A->d * y * y;
      if (norm.is_zero()) {
        AlgElem conj = scalar(A, x) - monomial(A, 1, y);
        out.status = Status::Fails;
        out.witness = {{"reason", "zero_divisor"}, {"annihilator", to_string(conj)}};
        return out;
      }
      Scalar ni = norm.inv();
      out.status = Status::Holds;
      out.inverse = scalar(A, x * ni) - monomial(A, 1, y * ni);
      return out;
    }
    case Family::Nested: {
      if (a.in_degree_zero()) {
        UnitCheck in = unit_check(a.nest[0].c);
        out.status = in.status;
        if (in.inverse) out.inverse = embed(A, *in.inverse);
        if (in.status == Status::Fails) out.witness = {{"reason", "degree_zero"}, {"inner", in.witness}};
        return out;
      }
      if (is_domain(A)) {
        out.status = Status::Fails;
        out.witness = {{"reason", "domain_degree"}};
        return out;
      }
      out.status = Status::Inconclusive;
      out.witness = {{"reason", "no unit decision outside degree zero over a non-domain"}};
      return out;
    }
  }
  return out;
}

// ------------------------------------------------------------- automorphisms

AutoPtr auto_identity(const AlgebraPtr& a) {
  auto phi = std::make_shared<Auto>();
  phi->alg = a;
  phi->lam = Scalar(a->ctx, 1L);
  phi->shift = Scalar(a->ctx);
  if (a->family == Family::Nested) {
    phi->inner = auto_identity(a->inner());
    phi->img_y = gen_y(a);
    phi->img_x = gen_x(a);
  }
  return phi;
}

AutoPtr auto_scale(const AlgebraPtr& a, const Scalar& lam) {
  if (lam.is_zero()) throw MathError("automorphism scale must be nonzero");
  auto phi = std::make_shared<Auto>();
  phi->alg = a;
  phi->lam = lam;
  phi->shift = Scalar(a->ctx);
  return phi;
}

AutoPtr auto_affine(const AlgebraPtr& a, const Scalar& lam, const Scalar& shift) {
  if (a->family != Family::Poly) throw MathError("affine maps apply to poly(t)");
  auto phi = std::make_shared<Auto>();
  phi->alg = a;
  phi->lam = lam;
  phi->shift = shift;
  return phi;
}

AutoPtr auto_sign(const AlgebraPtr& a, int sign) {
  auto phi = std::make_shared<Auto>();
  phi->alg = a;
  phi->lam = Scalar(a->ctx, static_cast<long>(sign));
  phi->shift = Scalar(a->ctx);
  phi->sign = sign;
  return phi;
}

AutoPtr auto_nested(const AlgebraPtr& a, AutoPtr inner, AlgElem img_y, AlgElem img_x) {
  auto phi = std::make_shared<Auto>();
  phi->alg = a;
  phi->lam = Scalar(a->ctx, 1L);
  phi->shift = Scalar(a->ctx);
  phi->inner = std::move(inner);
  phi->img_y = std::move(img_y);
  phi->img_x = std::move(img_x);
  return phi;
}

namespace {

// Scalar c with img = c*y (resp. x*c), when the coefficient is a scalar.
std::optional<Scalar> diag_coeff(const AlgElem& img, int i, int j) {
  if (img.nest.size() != 1 || img.nest[0].i != i || img.nest[0].j != j) return std::nullopt;
  return img.nest[0].c.as_scalar();
}

}  // namespace

AlgElem apply_auto(const AutoPtr& phi, const AlgElem& a) {
  const AlgebraPtr& A = a.alg;
  if (phi->alg != A) throw MathError("automorphism applied outside its algebra");
  if (a.is_zero()) return a;
  switch (A->family) {
    case Family::Field:
      return a;
    case Family::Cyclic:
    case Family::Laurent:
    case Family::Quadratic: {
      AlgElem r(A);
      for (const auto& [k, c] : a.flat) r.flat.emplace_back(k, c * phi->lam.pow(k));
      return r;
    }
    case Family::Poly: {
      if (phi->shift.is_zero()) {
        AlgElem r(A);
        for (const auto& [k, c] : a.flat) r.flat.emplace_back(k, c * phi->lam.pow(k));
        return r;
      }
      AlgElem img = monomial(A, 1, phi->lam) + scalar(A, phi->shift);
      AlgElem r(A), p = one(A);
      int last = 0;
      for (const auto& [k, c] : a.flat) {
        for (; last < k; ++last) p = p * img;
        r = r + c * p;
      }
      return r;
    }
    case Family::Nested: {
      auto cy = diag_coeff(phi->img_y, 0, 1);
      auto cx = diag_coeff(phi->img_x, 1, 0);
      if (cy && cx) {
        AlgElem r(A);
        for (const auto& t : a.nest) {
          AlgElem c = (cx->pow(t.i) * cy->pow(t.j)) * apply_auto(phi->inner, t.c);
          if (!c.is_zero()) r.nest.push_back(NTerm{t.i, t.j, c});
        }
        return r;
      }
      AlgElem r(A);
      std::vector<AlgElem> xp{one(A)}, yp{one(A)};
      for (const auto& t : a.nest) {
        while (static_cast<int>(xp.size()) <= t.i) xp.push_back(xp.back() * phi->img_x);
        while (static_cast<int>(yp.size()) <= t.j) yp.push_back(yp.back() * phi->img_y);
        r = r + xp[t.i] * embed(A, apply_auto(phi->inner, t.c)) * yp[t.j];
      }
      return r;
    }
  }
  return a;
}

AutoPtr compose(const AutoPtr& phi, const AutoPtr& psi) {
  const AlgebraPtr& A = phi->alg;
  if (psi->alg != A) throw MathError("composing automorphisms of different algebras");
  switch (A->family) {
    case Family::Field:
      return phi;
    case Family::Cyclic:
    case Family::Laurent:
      return auto_scale(A, phi->lam * psi->lam);
    case Family::Quadratic:
      return auto_sign(A, phi->sign * psi->sign);
    case Family::Poly:
      // phi(psi(t)) = l2 (l1 t + c1) + c2 with psi: l2, c2
      return auto_affine(A, phi->lam * psi->lam, psi->lam * phi->shift + psi->shift);
    case Family::Nested:
      return auto_nested(A, compose(phi->inner, psi->inner), apply_auto(phi, psi->img_y),
                         apply_auto(phi, psi->img_x));
  }
  return phi;
}

AutoPtr inverse(const AutoPtr& phi) {
  const AlgebraPtr& A = phi->alg;
  switch (A->family) {
    case Family::Field:
      return phi;
    case Family::Cyclic:
    case Family::Laurent:
      return auto_scale(A, phi->lam.inv());
    case Family::Quadratic:
      return phi;
    case Family::Poly:
      return auto_affine(A, phi->lam.inv(), -(phi->shift / phi->lam));
    case Family::Nested: {
      AutoPtr in = inverse(phi->inner);
      AlgElem gy = phi->img_y.coeff(0, 1), cx = phi->img_x.coeff(1, 0);
      UnitCheck uy = unit_check(gy), ux = unit_check(cx);
      if (phi->img_y.nest.size() != 1 || phi->img_x.nest.size() != 1 || !uy.inverse || !ux.inverse)
        throw MathError("automorphism images of y and x must be unit multiples");
      return auto_nested(A, in, nested_term(A, 0, 1, apply_auto(in, *uy.inverse)),
                         nested_term(A, 1, 0, apply_auto(in, *ux.inverse)));
    }
  }
  return phi;
}

AutoPtr power(const AutoPtr& phi, long k) {
  const AlgebraPtr& A = phi->alg;
  if (k < 0) return power(inverse(phi), -k);
  switch (A->family) {
    case Family::Field:
      return phi;
    case Family::Cyclic:
    case Family::Laurent:
      return auto_scale(A, phi->lam.pow(k));
    case Family::Quadratic:
      return auto_sign(A, (k % 2) ? phi->sign : 1);
    case Family::Poly:
      return auto_affine(A, phi->lam.pow(k), phi->shift * q_integer(k, phi->lam));
    case Family::Nested:
      break;
  }
  AutoPtr r = auto_identity(A), b = phi;
  while (k) {
    if (k & 1) r = compose(r, b);
    k >>= 1;
    if (k) b = compose(b, b);
  }
  return r;
}

std::vector<AlgElem> algebra_generators(const AlgebraPtr& a) {
  std::vector<AlgElem> g;
  switch (a->family) {
    case Family::Field:
      break;
    case Family::Cyclic:
    case Family::Poly:
    case Family::Quadratic:
      g.push_back(generator(a));
      break;
    case Family::Laurent:
      g.push_back(generator(a));
      g.push_back(monomial(a, -1, Scalar(a->ctx, 1L)));
      break;
    case Family::Nested:
      for (const auto& e : algebra_generators(a->inner())) g.push_back(embed(a, e));
      g.push_back(gen_y(a));
      g.push_back(gen_x(a));
      break;
  }
  return g;
}

bool auto_equal(const AutoPtr& phi, const AutoPtr& psi) {
  if (phi->alg != psi->alg) return false;
  for (const auto& g : algebra_generators(phi->alg))
    if (apply_auto(phi, g) != apply_auto(psi, g)) return false;
  return true;
}

bool is_identity(const AutoPtr& phi) {
  for (const auto& g : algebra_generators(phi->alg))
    if (apply_auto(phi, g) != g) return false;
  return true;
}

bool is_diagonal(const AutoPtr& phi) {
  switch (phi->alg->family) {
    case Family::Poly:
      return phi->shift.is_zero();
    case Family::Nested:
      return is_diagonal(phi->inner) && diag_coeff(phi->img_y, 0, 1) &&
             diag_coeff(phi->img_x, 1, 0);
    default:
      return true;
  }
}

Scalar eigenvalue(const AutoPtr& phi, int k) {
  if (phi->alg->family == Family::Field) return Scalar(phi->alg->ctx, 1L);
  return phi->lam.pow(k);
}

std::optional<std::string> validate_auto(const AutoPtr& phi) {
  const AlgebraPtr& A = phi->alg;
  switch (A->family) {
    case Family::Field:
      return std::nullopt;
    case Family::Cyclic:
      if (!phi->lam.pow(A->n).is_one())
        return "image of " + A->gen + " violates " + A->gen + "^" + std::to_string(A->n) + " = 1";
      return std::nullopt;
    case Family::Laurent:
    case Family::Poly:
      if (phi->lam.is_zero()) return "automorphism scale must be nonzero";
      return std::nullopt;
    case Family::Quadratic:
      if (phi->sign != 1 && phi->sign != -1) return "quadratic automorphism must be s -> +-s";
      return std::nullopt;
    case Family::Nested:
      break;
  }
  if (auto e = validate_auto(phi->inner)) return e;
  const Ring& R = *A->ring;
  if (phi->img_y.nest.size() != 1 || phi->img_y.nest[0].i != 0 || phi->img_y.nest[0].j != 1)
    return "image of " + R.yname + " must be a unit multiple of " + R.yname;
  if (phi->img_x.nest.size() != 1 || phi->img_x.nest[0].i != 1 || phi->img_x.nest[0].j != 0)
    return "image of " + R.xname + " must be a unit multiple of " + R.xname;
  if (unit_check(phi->img_y.nest[0].c).status != Status::Holds)
    return "coefficient of the image of " + R.yname + " is not a unit";
  if (unit_check(phi->img_x.nest[0].c).status != Status::Holds)
    return "coefficient of the image of " + R.xname + " is not a unit";
  const AlgElem& py = phi->img_y;
  const AlgElem& px = phi->img_x;
  for (const auto& g : algebra_generators(R.base)) {
    AlgElem pg = embed(A, apply_auto(phi->inner, g));
    AlgElem lhs = py * pg;
    AlgElem rhs = embed(A, apply_auto(phi->inner, apply_auto(R.alpha, g))) * py;
    if (lhs != rhs) return "relation " + R.yname + "*a = alpha(a)*" + R.yname + " not preserved";
    lhs = px * pg;
    rhs = embed(A, apply_auto(phi->inner, apply_auto(R.beta, g))) * px;
    if (lhs != rhs) return "relation " + R.xname + "*a = beta(a)*" + R.xname + " not preserved";
  }
  AlgElem lhs = px * py - R.rho * (py * px);
  if (lhs != embed(A, apply_auto(phi->inner, R.v)))
    return "relation " + R.xname + R.yname + " - rho*" + R.yname + R.xname + " = v not preserved";
  return std::nullopt;
}

}  // namespace ambiskew
