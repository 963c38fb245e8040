#include "ambiskew/upoly.hpp"

namespace ambiskew::upoly {

void trim(UP& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

int deg(const UP& p) { return static_cast<int>(p.size()) - 1; }

UP add(const UP& a, const UP& b) {
  UP r = a.size() >= b.size() ? a : b;
  const UP& s = a.size() >= b.size() ? b : a;
  for (size_t i = 0; i < s.size(); ++i) r[i] += s[i];
  trim(r);
  return r;
}

UP scale(const UP& a, const Scalar& c) {
  if (c.is_zero()) return {};
  UP r = a;
  for (auto& x : r) x *= c;
  return r;
}

UP sub(const UP& a, const UP& b) {
  if (b.empty()) return a;
  return add(a, scale(b, Scalar(b[0].ctx(), -1L)));
}

UP mul(const UP& a, const UP& b) {
  if (a.empty() || b.empty()) return {};
  UP r(a.size() + b.size() - 1, Scalar(a[0].ctx()));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

void divmod(const UP& a, const UP& b, UP& q, UP& r) {
  if (b.empty()) throw MathError("polynomial division by zero");
  r = a;
  q.clear();
  if (deg(a) < deg(b)) return;
  q.assign(a.size() - b.size() + 1, Scalar(b[0].ctx()));
  Scalar li = b.back().inv();
  while (!r.empty() && deg(r) >= deg(b)) {
    int k = deg(r) - deg(b);
    Scalar c = r.back() * li;
    q[k] = c;
    for (size_t i = 0; i < b.size(); ++i) r[i + k] -= c * b[i];
    r.pop_back();
    trim(r);
  }
  trim(q);
}

UP monic(const UP& a) {
  if (a.empty()) return a;
  return scale(a, a.back().inv());
}

UP gcd(const UP& a, const UP& b) {
  UP x = a, y = b, q, r;
  while (!y.empty()) {
    divmod(x, y, q, r);
    x = std::move(y);
    y = std::move(r);
  }
  return monic(x);
}

UP xgcd(const UP& a, const UP& b, UP& s, UP& t) {
  Ctx ctx = !a.empty() ? a[0].ctx() : b[0].ctx();
  UP r0 = a, r1 = b, s0{Scalar(ctx, 1L)}, s1, t0, t1{Scalar(ctx, 1L)}, q, r;
  while (!r1.empty()) {
    divmod(r0, r1, q, r);
    UP s2 = sub(s0, mul(q, s1)), t2 = sub(t0, mul(q, t1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.empty()) {
    s = s0;
    t = t0;
    return r0;
  }
  Scalar li = r0.back().inv();
  s = scale(s0, li);
  t = scale(t0, li);
  return scale(r0, li);
}

UP compose_affine(const UP& p, const Scalar& c, const Scalar& d) {
  if (p.empty()) return p;
  UP lin{d, c}, acc, pw{Scalar(c.ctx(), 1L)};
  trim(lin);
  for (const auto& coeff : p) {
    acc = add(acc, scale(pw, coeff));
    pw = mul(pw, lin);
  }
  return acc;
}

std::optional<std::vector<Scalar>> solve_linear(std::vector<std::vector<Scalar>> M,
                                                std::vector<Scalar> rhs, size_t n, Ctx ctx) {
  size_t rows = M.size();
  for (size_t r = 0; r < rows; ++r) {
    M[r].resize(n, Scalar(ctx));
    M[r].push_back(rhs[r]);
  }
  std::vector<size_t> pivot_col;
  size_t row = 0;
  for (size_t c = 0; c < n && row < rows; ++c) {
    size_t p = row;
    while (p < rows && M[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(M[p], M[row]);
    Scalar inv = M[row][c].inv();
    for (auto& x : M[row]) x *= inv;
    for (size_t r = 0; r < rows; ++r)
      if (r != row && !M[r][c].is_zero()) {
        Scalar f = M[r][c];
        for (size_t k = c; k <= n; ++k) M[r][k] -= f * M[row][k];
      }
    pivot_col.push_back(c);
    ++row;
  }
  for (size_t r = row; r < rows; ++r)
    if (!M[r][n].is_zero()) return std::nullopt;
  std::vector<Scalar> sol(n, Scalar(ctx));
  for (size_t r = 0; r < pivot_col.size(); ++r) sol[pivot_col[r]] = M[r][n];
  return sol;
}

UP from_elem(const AlgElem& a, int* shift) {
  UP r;
  if (a.is_zero()) {
    if (shift) *shift = 0;
    return r;
  }
  int lo = a.flat.front().first;
  if (!shift && lo < 0) throw MathError("negative exponent in a polynomial");
  if (!shift) lo = 0;
  r.assign(a.flat.back().first - lo + 1, Scalar(a.ctx()));
  for (const auto& [k, c] : a.flat) r[k - lo] = c;
  if (shift) *shift = lo;
  return r;
}

AlgElem to_elem(const AlgebraPtr& alg, const UP& p, int shift) {
  AlgElem r(alg);
  for (size_t i = 0; i < p.size(); ++i)
    if (!p[i].is_zero()) r.flat.emplace_back(static_cast<int>(i) + shift, p[i]);
  return r;
}

}  // namespace ambiskew::upoly
