#include "ambiskew/scalars.hpp"

#include <algorithm>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>

namespace ambiskew {

namespace {

using UPoly = std::vector<mpq_class>;  // dense, low degree first

void trim(UPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

UPoly umul(const UPoly& a, const UPoly& b) {
  if (a.empty() || b.empty()) return {};
  UPoly r(a.size() + b.size() - 1, mpq_class(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

UPoly usub(UPoly a, const UPoly& b) {
  if (a.size() < b.size()) a.resize(b.size(), mpq_class(0));
  for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

void udivmod(UPoly a, const UPoly& b, UPoly& q, UPoly& r) {
  trim(a);
  q.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, mpq_class(0));
  while (!a.empty() && a.size() >= b.size()) {
    size_t shift = a.size() - b.size();
    mpq_class k = a.back() / b.back();
    q[shift] = k;
    for (size_t i = 0; i < b.size(); ++i) a[i + shift] -= k * b[i];
    trim(a);
  }
  trim(q);
  r = a;
}

UPoly cyclotomic(int n, std::map<int, UPoly>& memo) {
  auto it = memo.find(n);
  if (it != memo.end()) return it->second;
  UPoly num(n + 1, mpq_class(0));
  num[0] = -1;
  num[n] = 1;
  for (int d = 1; d < n; ++d) {
    if (n % d) continue;
    UPoly q, r;
    udivmod(num, cyclotomic(d, memo), q, r);
    num = q;
  }
  memo[n] = num;
  return num;
}

std::mutex& registry_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

// ---------------------------------------------------------------- BaseField

const BaseField* BaseField::get(long p, int N) {
  static std::map<std::pair<long, int>, std::unique_ptr<BaseField>> reg;
  if (p != 0) N = 1;
  std::lock_guard<std::mutex> lock(registry_mutex());
  auto key = std::make_pair(p, N);
  auto it = reg.find(key);
  if (it != reg.end()) return it->second.get();
  auto f = std::make_unique<BaseField>();
  f->p = p;
  f->N = N;
  if (p != 0) {
    f->phi = 1;
    f->cyclo = {mpq_class(0), mpq_class(1)};
  } else {
    std::map<int, UPoly> memo;
    f->cyclo = cyclotomic(N, memo);
    f->phi = static_cast<int>(f->cyclo.size()) - 1;
  }
  int phi = f->phi;
  for (int k = 0; k < 2 * phi; ++k) {
    std::vector<mpq_class> v(phi, mpq_class(0));
    if (k < phi) {
      v[k] = 1;
    } else {
      const auto& prev = f->xpow[k - 1];
      mpq_class top = prev[phi - 1];
      for (int i = phi - 1; i > 0; --i) v[i] = prev[i - 1];
      v[0] = 0;
      for (int i = 0; i < phi; ++i) v[i] -= top * f->cyclo[i];
    }
    f->xpow.push_back(v);
  }
  const BaseField* out = f.get();
  reg.emplace(key, std::move(f));
  return out;
}

// ---------------------------------------------------------------------- Cyc

Cyc::Cyc(const BaseField* field) : f(field), c(field->phi, mpq_class(0)) {}

Cyc::Cyc(const BaseField* field, const mpq_class& r) : Cyc(field) {
  c[0] = r;
  c[0].canonicalize();
  reduce_p();
}

Cyc Cyc::zeta(const BaseField* field) {
  if (field->p != 0) throw MathError("zeta is unavailable in characteristic p");
  Cyc z(field);
  z.c = field->xpow[1];
  return z;
}

void Cyc::reduce_p() {
  if (f->p == 0) return;
  mpz_class pz(f->p);
  mpz_class num = c[0].get_num() % pz;
  mpz_class den = c[0].get_den() % pz;
  if (den < 0) den += pz;
  if (den == 0) throw MathError("denominator divisible by the characteristic");
  mpz_class di;
  mpz_invert(di.get_mpz_t(), den.get_mpz_t(), pz.get_mpz_t());
  mpz_class v = (num * di) % pz;
  if (v < 0) v += pz;
  c[0] = mpq_class(v);
}

bool Cyc::is_zero() const {
  for (const auto& x : c)
    if (x != 0) return false;
  return true;
}

bool Cyc::is_one() const {
  if (c[0] != 1) return false;
  for (size_t i = 1; i < c.size(); ++i)
    if (c[i] != 0) return false;
  return true;
}

bool Cyc::is_rational() const {
  for (size_t i = 1; i < c.size(); ++i)
    if (c[i] != 0) return false;
  return true;
}

Cyc Cyc::operator+(const Cyc& o) const {
  Cyc r(*this);
  for (size_t i = 0; i < c.size(); ++i) r.c[i] += o.c[i];
  r.reduce_p();
  return r;
}

Cyc Cyc::operator-(const Cyc& o) const {
  Cyc r(*this);
  for (size_t i = 0; i < c.size(); ++i) r.c[i] -= o.c[i];
  r.reduce_p();
  return r;
}

Cyc Cyc::operator-() const {
  Cyc r(*this);
  for (auto& x : r.c) x = -x;
  r.reduce_p();
  return r;
}

Cyc Cyc::operator*(const Cyc& o) const {
  const int phi = f->phi;
  Cyc r(f);
  if (phi == 1) {
    r.c[0] = c[0] * o.c[0];
    r.reduce_p();
    return r;
  }
  std::vector<mpq_class> conv(2 * phi - 1, mpq_class(0));
  for (int i = 0; i < phi; ++i) {
    if (c[i] == 0) continue;
    for (int j = 0; j < phi; ++j) conv[i + j] += c[i] * o.c[j];
  }
  for (int k = 0; k < 2 * phi - 1; ++k) {
    if (conv[k] == 0) continue;
    const auto& xk = f->xpow[k];
    for (int i = 0; i < phi; ++i) r.c[i] += conv[k] * xk[i];
  }
  return r;
}

Cyc Cyc::inv() const {
  if (is_zero()) throw MathError("division by zero");
  Cyc r(f);
  if (f->p != 0) {
    mpz_class pz(f->p), v = c[0].get_num(), out;
    mpz_invert(out.get_mpz_t(), v.get_mpz_t(), pz.get_mpz_t());
    r.c[0] = mpq_class(out);
    return r;
  }
  if (f->phi == 1) {
    r.c[0] = 1 / c[0];
    return r;
  }
  // Extended Euclid: s*a + t*Phi = g, g constant.
  UPoly a(c.begin(), c.end());
  trim(a);
  UPoly b = f->cyclo;
  UPoly s0{mpq_class(1)}, s1{};
  while (!b.empty()) {
    UPoly q, rem;
    udivmod(a, b, q, rem);
    UPoly s2 = usub(s0, umul(q, s1));
    a = b;
    b = rem;
    s0 = s1;
    s1 = s2;
  }
  // a is a nonzero constant since Phi_N is irreducible.
  mpq_class g = a[0];
  for (size_t i = 0; i < s0.size(); ++i) {
    if (i < r.c.size()) {
      r.c[i] += s0[i] / g;
    } else {
      const auto& xi = f->xpow[i];
      for (int k = 0; k < f->phi; ++k) r.c[k] += s0[i] / g * xi[k];
    }
  }
  return r;
}

Cyc Cyc::pow(long e) const {
  if (e < 0) return inv().pow(-e);
  Cyc base(*this), r(f, mpq_class(1));
  while (e) {
    if (e & 1) r = r * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return r;
}

std::string Cyc::str() const {
  if (f->p != 0) return c[0].get_str();
  std::ostringstream os;
  bool first = true;
  for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) {
    if (c[i] == 0) continue;
    mpq_class a = abs(c[i]);
    bool neg = c[i] < 0;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    if (i == 0) {
      os << a.get_str();
    } else {
      if (a != 1) os << a.get_str() << "*";
      os << "zeta";
      if (i > 1) os << "^" << i;
    }
  }
  if (first) return "0";
  return os.str();
}

// ------------------------------------------------------------ ScalarContext

int ScalarContext::param_index(const std::string& name) const {
  for (size_t i = 0; i < parameters.size(); ++i)
    if (parameters[i] == name) return static_cast<int>(i);
  return -1;
}

const ScalarContext* ScalarContext::get(long characteristic, int N,
                                        const std::vector<std::string>& params) {
  if (characteristic < 0) throw MathError("characteristic must be 0 or a prime");
  if (characteristic != 0) {
    if (mpz_probab_prime_p(mpz_class(characteristic).get_mpz_t(), 30) == 0)
      throw MathError("characteristic must be 0 or a prime");
    N = 1;
  }
  if (N < 1) throw MathError("cyclotomic order must be at least 1");
  for (size_t i = 0; i < params.size(); ++i)
    for (size_t j = i + 1; j < params.size(); ++j)
      if (params[i] == params[j]) throw MathError("duplicate parameter " + params[i]);
  const BaseField* f = BaseField::get(characteristic, N);
  static std::map<std::tuple<long, int, std::vector<std::string>>,
                  std::unique_ptr<ScalarContext>>
      reg;
  std::lock_guard<std::mutex> lock(registry_mutex());
  auto key = std::make_tuple(characteristic, N, params);
  auto it = reg.find(key);
  if (it != reg.end()) return it->second.get();
  auto c = std::make_unique<ScalarContext>();
  c->characteristic = characteristic;
  c->cyclotomic_order = N;
  c->parameters = params;
  c->field = f;
  const ScalarContext* out = c.get();
  reg.emplace(key, std::move(c));
  return out;
}

// -------------------------------------------------------------------- MPoly

bool GrlexLess::operator()(const Mono& a, const Mono& b) const {
  int da = 0, db = 0;
  for (int x : a) da += x;
  for (int x : b) db += x;
  if (da != db) return da < db;
  return a < b;
}

MPoly MPoly::constant(Ctx c, const Cyc& v) {
  MPoly p(c);
  if (!v.is_zero()) p.terms.emplace(Mono(c->nvars(), 0), v);
  return p;
}

MPoly MPoly::var(Ctx c, size_t i, int e) {
  MPoly p(c);
  Mono m(c->nvars(), 0);
  m[i] = e;
  p.terms.emplace(m, Cyc(c->field, mpq_class(1)));
  return p;
}

void MPoly::add_term(const Mono& m, const Cyc& v) {
  if (v.is_zero()) return;
  auto it = terms.find(m);
  if (it == terms.end()) {
    terms.emplace(m, v);
    return;
  }
  it->second = it->second + v;
  if (it->second.is_zero()) terms.erase(it);
}

bool MPoly::is_constant() const {
  if (terms.empty()) return true;
  if (terms.size() != 1) return false;
  for (int e : terms.begin()->first)
    if (e) return false;
  return true;
}

Cyc MPoly::constant_value() const {
  if (terms.empty()) return Cyc(ctx->field);
  return terms.begin()->second;
}

int MPoly::degree_in(size_t v) const {
  int d = 0;
  for (const auto& [m, _] : terms) d = std::max(d, m[v]);
  return d;
}

std::vector<MPoly> MPoly::coeffs_in(size_t v) const {
  std::vector<MPoly> out(degree_in(v) + 1, MPoly(ctx));
  for (const auto& [m, c] : terms) {
    Mono k = m;
    k[v] = 0;
    out[m[v]].terms.emplace(k, c);
  }
  return out;
}

MPoly MPoly::from_coeffs(Ctx c, size_t v, const std::vector<MPoly>& cs) {
  MPoly p(c);
  for (size_t k = 0; k < cs.size(); ++k)
    for (const auto& [m, x] : cs[k].terms) {
      Mono mm = m;
      mm[v] += static_cast<int>(k);
      p.add_term(mm, x);
    }
  return p;
}

MPoly MPoly::operator+(const MPoly& o) const {
  MPoly r(*this);
  if (!r.ctx) r.ctx = o.ctx;
  for (const auto& [m, c] : o.terms) r.add_term(m, c);
  return r;
}

MPoly MPoly::operator-(const MPoly& o) const {
  MPoly r(*this);
  if (!r.ctx) r.ctx = o.ctx;
  for (const auto& [m, c] : o.terms) r.add_term(m, -c);
  return r;
}

MPoly MPoly::operator-() const {
  MPoly r(ctx);
  for (const auto& [m, c] : terms) r.terms.emplace_hint(r.terms.end(), m, -c);
  return r;
}

MPoly MPoly::operator*(const MPoly& o) const {
  MPoly r(ctx ? ctx : o.ctx);
  if (is_zero() || o.is_zero()) return r;
  const size_t n = r.ctx->nvars();
  Mono m(n);
  for (const auto& [ma, ca] : terms)
    for (const auto& [mb, cb] : o.terms) {
      for (size_t i = 0; i < n; ++i) m[i] = ma[i] + mb[i];
      r.add_term(m, ca * cb);
    }
  return r;
}

MPoly MPoly::scaled(const Cyc& k) const {
  MPoly r(ctx);
  if (k.is_zero()) return r;
  for (const auto& [m, c] : terms) r.terms.emplace_hint(r.terms.end(), m, c * k);
  return r;
}

MPoly MPoly::shifted(const Mono& s) const {
  MPoly r(ctx);
  for (const auto& [m, c] : terms) {
    Mono k = m;
    for (size_t i = 0; i < k.size(); ++i) k[i] += s[i];
    r.terms.emplace(k, c);
  }
  return r;
}

MPoly MPoly::pow(unsigned e) const {
  MPoly r = constant(ctx, Cyc(ctx->field, mpq_class(1)));
  MPoly b(*this);
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

MPoly MPoly::monic() const {
  if (is_zero()) return *this;
  return scaled(lead_coeff().inv());
}

std::optional<MPoly> MPoly::divide_exact(const MPoly& b) const {
  if (b.is_zero()) throw MathError("division by zero polynomial");
  MPoly q(ctx ? ctx : b.ctx), r(*this);
  const Mono& lb = b.lead_mono();
  Cyc lbi = b.lead_coeff().inv();
  while (!r.is_zero()) {
    const Mono& lr = r.lead_mono();
    Mono t(lr.size());
    for (size_t i = 0; i < lr.size(); ++i) {
      t[i] = lr[i] - lb[i];
      if (t[i] < 0) return std::nullopt;
    }
    Cyc k = r.lead_coeff() * lbi;
    q.add_term(t, k);
    r = r - b.shifted(t).scaled(k);
  }
  return q;
}

namespace {

MPoly content_in(const MPoly& a, size_t v) {
  MPoly g(a.ctx);
  for (const auto& c : a.coeffs_in(v)) {
    if (c.is_zero()) continue;
    g = MPoly::gcd(g, c);
    if (g.is_constant()) break;
  }
  return g;
}

MPoly prim_in(const MPoly& a, size_t v) {
  if (a.is_zero()) return a;
  return *a.divide_exact(content_in(a, v));
}

// a scaled by a rational so every coefficient entry is an integer and the
// entries share no factor.
MPoly strip_numeric(const MPoly& a) {
  if (a.is_zero() || a.ctx->field->p != 0) return a;
  mpz_class num = 0, den = 1;
  for (const auto& [_, c] : a.terms)
    for (const auto& e : c.c) {
      if (e == 0) continue;
      mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), e.get_num_mpz_t());
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), e.get_den_mpz_t());
    }
  if (num == 0 || (num == 1 && den == 1)) return a;
  return a.scaled(Cyc(a.ctx->field, mpq_class(den, num)));
}

MPoly prem_in(MPoly a, const MPoly& b, size_t v) {
  int db = b.degree_in(v);
  MPoly lc = b.coeffs_in(v).back();
  while (!a.is_zero() && a.degree_in(v) >= db) {
    int da = a.degree_in(v);
    MPoly la = a.coeffs_in(v).back();
    Mono s(a.ctx->nvars(), 0);
    s[v] = da - db;
    a = strip_numeric(lc * a - (la * b).shifted(s));
  }
  return a;
}

}  // namespace

MPoly MPoly::gcd(const MPoly& a, const MPoly& b) {
  Ctx ctx = a.ctx ? a.ctx : b.ctx;
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  MPoly one = constant(ctx, Cyc(ctx->field, mpq_class(1)));
  if (a.is_constant() || b.is_constant()) return one;
  const size_t n = ctx->nvars();
  if (a.is_monomial() || b.is_monomial()) {
    const MPoly& mono = a.is_monomial() ? a : b;
    const MPoly& other = a.is_monomial() ? b : a;
    Mono g = mono.lead_mono();
    for (const auto& [m, _] : other.terms)
      for (size_t i = 0; i < n; ++i) g[i] = std::min(g[i], m[i]);
    MPoly r(ctx);
    r.terms.emplace(g, Cyc(ctx->field, mpq_class(1)));
    return r;
  }
  int shared = -1, in_a = -1, in_b = -1;
  for (size_t i = 0; i < n; ++i) {
    int da = a.degree_in(i), db = b.degree_in(i);
    if (da > 0 && in_a < 0) in_a = static_cast<int>(i);
    if (db > 0 && in_b < 0) in_b = static_cast<int>(i);
    if (da > 0 && db > 0 && shared < 0) shared = static_cast<int>(i);
  }
  if (shared < 0) {
    if (a.degree_in(in_a) > 0 && b.degree_in(in_a) == 0)
      return gcd(content_in(a, in_a), b);
    return gcd(a, content_in(b, in_b));
  }
  size_t v = static_cast<size_t>(shared);
  MPoly ca = content_in(a, v), cb = content_in(b, v);
  MPoly gc = gcd(ca, cb);
  MPoly p = strip_numeric(*a.divide_exact(ca)), q = strip_numeric(*b.divide_exact(cb));
  if (p.degree_in(v) < q.degree_in(v)) std::swap(p, q);
  while (true) {
    MPoly r = prem_in(p, q, v);
    if (r.is_zero()) break;
    if (r.degree_in(v) == 0) return gc.monic();
    p = q;
    q = strip_numeric(prim_in(r, v).monic());
  }
  return (gc * prim_in(q, v)).monic();
}

namespace {

std::string mono_str(Ctx ctx, const Mono& m) {
  std::string s;
  for (size_t i = 0; i < m.size(); ++i) {
    if (!m[i]) continue;
    if (!s.empty()) s += "*";
    s += ctx->parameters[i];
    if (m[i] != 1) s += "^" + std::to_string(m[i]);
  }
  return s;
}

}  // namespace

std::string MPoly::str() const {
  if (terms.empty()) return "0";
  std::string out;
  bool first = true;
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
    const Mono& m = it->first;
    const Cyc& c = it->second;
    std::string ms = mono_str(ctx, m);
    std::string cs;
    bool neg = false;
    if (c.is_rational() && ctx->characteristic == 0) {
      neg = c.c[0] < 0;
      mpq_class a = abs(c.c[0]);
      if (a != 1 || ms.empty()) cs = a.get_str();
    } else {
      cs = c.str();
      bool compound = cs.find_first_of("+") != std::string::npos ||
                      cs.find(" - ") != std::string::npos;
      if (compound) {
        cs = "(" + cs + ")";
      } else if (cs[0] == '-') {
        neg = true;
        cs = cs.substr(1);
      }
      if (cs == "1" && !ms.empty()) cs.clear();
    }
    if (first)
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    first = false;
    out += cs;
    if (!cs.empty() && !ms.empty()) out += "*";
    out += ms;
  }
  return out;
}

// ------------------------------------------------------------------- Scalar

Scalar::Scalar(Ctx c) : num(c), den(MPoly::constant(c, Cyc(c->field, mpq_class(1)))) {}

Scalar::Scalar(Ctx c, long v) : Scalar(c, mpq_class(v)) {}

Scalar::Scalar(Ctx c, const mpq_class& v) : Scalar(c, Cyc(c->field, v)) {}

Scalar::Scalar(Ctx c, const Cyc& v) : Scalar(c) { num = MPoly::constant(c, v); }

Scalar Scalar::zeta(Ctx c) { return Scalar(c, Cyc::zeta(c->field)); }

Scalar Scalar::param(Ctx c, const std::string& name) {
  int i = c->param_index(name);
  if (i < 0) throw MathError("unknown parameter " + name);
  Scalar s(c);
  s.num = MPoly::var(c, static_cast<size_t>(i));
  return s;
}

Scalar Scalar::from_fraction(const MPoly& n, const MPoly& d) {
  if (d.is_zero()) throw MathError("division by zero");
  Scalar s(n.ctx ? n.ctx : d.ctx);
  s.num = n;
  s.den = d;
  if (!s.num.ctx) s.num.ctx = s.den.ctx;
  s.canonicalize();
  return s;
}

void Scalar::canonicalize(bool reduce) {
  Ctx c = den.ctx;
  if (num.is_zero()) {
    den = MPoly::constant(c, Cyc(c->field, mpq_class(1)));
    return;
  }
  if (den.is_constant()) {
    Cyc d = den.constant_value();
    if (!d.is_one()) num = num.scaled(d.inv());
    den = MPoly::constant(c, Cyc(c->field, mpq_class(1)));
    return;
  }
  if (reduce && !num.is_constant()) {
    MPoly g = MPoly::gcd(num, den);
    if (!g.is_constant()) {
      num = *num.divide_exact(g);
      den = *den.divide_exact(g);
    }
  }
  Cyc lc = den.lead_coeff();
  if (!lc.is_one()) {
    Cyc li = lc.inv();
    num = num.scaled(li);
    den = den.scaled(li);
  }
}

bool Scalar::is_one() const { return num.is_constant() && den.is_constant() && num == den; }

bool Scalar::is_rational() const { return is_constant() && constant_value().is_rational(); }

Cyc Scalar::constant_value() const {
  if (!is_constant()) throw MathError("scalar is not constant");
  return num.constant_value();
}

mpq_class Scalar::rational_value() const {
  if (!is_rational()) throw MathError("scalar is not rational");
  return num.constant_value().c[0];
}

Scalar Scalar::operator+(const Scalar& o) const {
  if (o.is_zero()) return *this;
  if (is_zero()) return o;
  if (den.is_constant() && o.den.is_constant()) {
    Scalar r(ctx());
    r.num = num + o.num;
    return r;
  }
  // With g = gcd(d1, d2), any factor shared by the sum and d1*d2 divides g.
  MPoly g = MPoly::gcd(den, o.den);
  auto cut = [](const MPoly& a, const MPoly& b) { return b.is_constant() ? a : *a.divide_exact(b); };
  MPoly d1 = cut(den, g), d2 = cut(o.den, g);
  MPoly t = num * d2 + o.num * d1;
  Scalar r(ctx());
  if (t.is_zero()) return r;
  MPoly h = MPoly::gcd(t, g);
  r.num = cut(t, h);
  r.den = d1 * cut(o.den, h);
  r.canonicalize(false);
  return r;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator-() const {
  Scalar r(*this);
  r.num = -num;
  return r;
}

Scalar Scalar::operator*(const Scalar& o) const {
  if (is_zero() || o.is_zero()) return Scalar(ctx() ? ctx() : o.ctx());
  if (den.is_constant() && o.den.is_constant()) {
    Scalar r(ctx());
    r.num = num * o.num;
    return r;
  }
  // Both sides are reduced, so only cross factors can cancel.
  MPoly g1 = MPoly::gcd(num, o.den), g2 = MPoly::gcd(o.num, den);
  auto cut = [](const MPoly& a, const MPoly& g) { return g.is_constant() ? a : *a.divide_exact(g); };
  Scalar r(ctx());
  r.num = cut(num, g1) * cut(o.num, g2);
  r.den = cut(den, g2) * cut(o.den, g1);
  r.canonicalize(false);
  return r;
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inv(); }

Scalar Scalar::inv() const {
  if (is_zero()) throw MathError("division by zero");
  return from_fraction(den, num);
}

Scalar Scalar::pow(long e) const {
  if (e < 0) return inv().pow(-e);
  Scalar r(ctx(), 1L), b(*this);
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

std::string Scalar::str() const {
  std::string n = num.str();
  if (den.is_constant()) return n;
  auto atomic = [](const MPoly& p, const std::string& s) {
    return p.terms.size() == 1 && s.find(' ') == std::string::npos && s[0] != '-';
  };
  std::string d = den.str();
  std::string ns = (atomic(num, n) || (num.is_constant() && n.find(' ') == std::string::npos))
                       ? n
                       : "(" + n + ")";
  std::string ds = atomic(den, d) && d.find('*') == std::string::npos ? d : "(" + d + ")";
  return ns + "/" + ds;
}

// ---------------------------------------------------------------- utilities

namespace {

std::vector<long> divisors(long m) {
  std::vector<long> d;
  for (long i = 1; i * i <= m; ++i)
    if (m % i == 0) {
      d.push_back(i);
      if (i != m / i) d.push_back(m / i);
    }
  std::sort(d.begin(), d.end());
  return d;
}

}  // namespace

RootOrder root_of_unity_order(const Scalar& c) {
  if (c.is_zero()) throw MathError("root_of_unity_order of zero");
  RootOrder out;
  if (!c.is_constant()) return out;
  Cyc v = c.constant_value();
  Ctx ctx = c.ctx();
  long M;
  if (ctx->characteristic != 0) {
    M = ctx->characteristic - 1;
  } else {
    long N = ctx->cyclotomic_order;
    M = std::lcm(2L, N);
    if (!v.pow(M).is_one()) return out;
  }
  for (long d : divisors(M))
    if (v.pow(d).is_one()) {
      out.kind = RootOrder::Finite;
      out.order = d;
      return out;
    }
  return out;
}

Scalar q_integer(long m, const Scalar& q) {
  if (m < 0) throw MathError("q_integer needs m >= 0");
  Scalar sum(q.ctx()), term(q.ctx(), 1L);
  for (long i = 0; i < m; ++i) {
    sum += term;
    term *= q;
  }
  return sum;
}

IntegerSolutions positive_integer_solution(const Scalar& a, const Scalar& b) {
  if (a.ctx()->characteristic != 0)
    throw MathError("positive_integer_solution requires characteristic 0");
  IntegerSolutions out;
  if (a.is_zero()) {
    out.all = b.is_zero();
    return out;
  }
  Scalar m = -(b / a);
  if (!m.is_rational()) return out;
  mpq_class r = m.rational_value();
  if (r.get_den() == 1 && r > 0 && r.get_num().fits_slong_p())
    out.values.push_back(r.get_num().get_si());
  return out;
}

bool lucas_binomial_nonzero(unsigned long n, unsigned long r, unsigned long p) {
  if (r > n) throw MathError("lucas_binomial_nonzero needs r <= n");
  if (p < 2) throw MathError("p must be prime");
  while (r > 0) {
    if (r % p > n % p) return false;
    r /= p;
    n /= p;
  }
  return true;
}

namespace {

bool factor_rational(mpz_class x, long sign, std::map<std::string, mpz_class>& exps) {
  if (x < 0) x = -x;
  for (unsigned long q = 2; q < 1000000 && x > 1; ++q) {
    if (mpz_divisible_ui_p(x.get_mpz_t(), q) == 0) continue;
    long e = 0;
    while (mpz_divisible_ui_p(x.get_mpz_t(), q) != 0) {
      x /= q;
      ++e;
    }
    exps["q:" + std::to_string(q)] += sign * e;
  }
  if (x > 1) {
    if (mpz_probab_prime_p(x.get_mpz_t(), 40) == 0) return false;
    exps["q:" + x.get_str()] += sign;
  }
  return true;
}

long primitive_root(long p) {
  if (p == 2) return 1;
  std::vector<long> fs;
  long m = p - 1;
  for (long q = 2; q * q <= m; ++q)
    if (m % q == 0) {
      fs.push_back(q);
      while (m % q == 0) m /= q;
    }
  if (m > 1) fs.push_back(m);
  for (long g = 2; g < p; ++g) {
    bool ok = true;
    for (long q : fs) {
      mpz_class r;
      mpz_class gz(g), ez((p - 1) / q), pz(p);
      mpz_powm(r.get_mpz_t(), gz.get_mpz_t(), ez.get_mpz_t(), pz.get_mpz_t());
      if (r == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  return 1;
}

}  // namespace

std::optional<MultDecomposition> multiplicative_decompose(const Scalar& c) {
  if (c.is_zero()) throw MathError("multiplicative_decompose of zero");
  if (!c.num.is_monomial() || !c.den.is_monomial()) return std::nullopt;
  Ctx ctx = c.ctx();
  MultDecomposition d;
  const Mono& mn = c.num.lead_mono();
  const Mono& md = c.den.lead_mono();
  for (size_t i = 0; i < mn.size(); ++i)
    if (mn[i] - md[i] != 0) d.exps["p:" + ctx->parameters[i]] = mn[i] - md[i];
  Cyc k = c.num.lead_coeff() * c.den.lead_coeff().inv();
  if (ctx->characteristic != 0) {
    long p = ctx->characteristic;
    d.torsion_modulus = p - 1;
    long g = primitive_root(p);
    long target = k.c[0].get_num().get_si();
    long x = 1;
    for (long e = 0; e < p - 1; ++e) {
      if (x == target) {
        d.torsion_exp = e;
        return d;
      }
      x = (x * g) % p;
    }
    return std::nullopt;
  }
  long N = ctx->cyclotomic_order;
  long M = std::lcm(2L, N);
  d.torsion_modulus = M;
  // generator of the torsion group: zeta_N (N even) or -zeta_N (N odd)
  Cyc g = Cyc::zeta(ctx->field);
  if (N % 2) g = -g;
  Cyc gi = g.inv();
  Cyc cur = k;
  for (long e = 0; e < M; ++e) {
    if (cur.is_rational() && cur.c[0] > 0) {
      d.torsion_exp = e;
      if (!ctx->rational_relation_mode && cur.c[0] != 1) return std::nullopt;
      if (!factor_rational(cur.c[0].get_num(), 1, d.exps)) return std::nullopt;
      if (!factor_rational(cur.c[0].get_den(), -1, d.exps)) return std::nullopt;
      for (auto it = d.exps.begin(); it != d.exps.end();)
        it = it->second == 0 ? d.exps.erase(it) : std::next(it);
      return d;
    }
    cur = cur * gi;
  }
  return std::nullopt;
}

}  // namespace ambiskew
