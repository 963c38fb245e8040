#include "ambiskew/lattice.hpp"

#include <algorithm>

namespace ambiskew {

namespace {

mpz_class dot(const IVec& r, const IVec& b) {
  mpz_class s = 0;
  for (size_t i = 0; i < r.size(); ++i) s += r[i] * b[i];
  return s;
}

void axpy(IVec& b, const mpz_class& c, const IVec& a) {
  for (size_t i = 0; i < b.size(); ++i) b[i] -= c * a[i];
}

}  // namespace

std::vector<IVec> integer_kernel(const std::vector<IVec>& rows, size_t n) {
  std::vector<IVec> basis;
  for (size_t i = 0; i < n; ++i) {
    IVec e(n, 0);
    e[i] = 1;
    basis.push_back(e);
  }
  for (const auto& row : rows) {
    std::vector<mpz_class> w;
    for (const auto& b : basis) w.push_back(dot(row, b));
    // Euclid on the columns until at most one has a nonzero value on `row`.
    for (;;) {
      long piv = -1;
      for (size_t c = 0; c < w.size(); ++c)
        if (w[c] != 0 && (piv < 0 || abs(w[c]) < abs(w[piv]))) piv = static_cast<long>(c);
      if (piv < 0) break;
      bool other = false;
      for (size_t c = 0; c < w.size(); ++c) {
        if (static_cast<long>(c) == piv || w[c] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), w[c].get_mpz_t(), w[piv].get_mpz_t());
        axpy(basis[c], q, basis[piv]);
        w[c] -= q * w[piv];
        if (w[c] != 0) other = true;
      }
      if (!other) {
        basis.erase(basis.begin() + piv);
        w.erase(w.begin() + piv);
        break;
      }
    }
  }
  // Size reduction keeps witnesses short.
  for (size_t a = 0; a < basis.size(); ++a)
    for (size_t b = 0; b < basis.size(); ++b) {
      if (a == b) continue;
      mpz_class nb = dot(basis[b], basis[b]);
      if (nb == 0) continue;
      mpz_class num = dot(basis[a], basis[b]), q;
      // nearest integer to num / nb
      mpz_class twice = 2 * num + nb;
      mpz_fdiv_q(q.get_mpz_t(), twice.get_mpz_t(), mpz_class(2 * nb).get_mpz_t());
      if (q != 0) axpy(basis[a], q, basis[b]);
    }
  return basis;
}

}  // namespace ambiskew
