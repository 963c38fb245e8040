#pragma once

// Dense univariate polynomials over the scalar field, used by the Poly and
// Laurent decision procedures.

#include <optional>
#include <vector>

#include "ambiskew/algebra.hpp"

namespace ambiskew::upoly {

using UP = std::vector<Scalar>;   // low degree first, no trailing zeros

void trim(UP& p);
int deg(const UP& p);   // -1 for zero
UP add(const UP& a, const UP& b);
UP sub(const UP& a, const UP& b);
UP mul(const UP& a, const UP& b);
UP scale(const UP& a, const Scalar& c);
// a = q*b + r
void divmod(const UP& a, const UP& b, UP& q, UP& r);
UP monic(const UP& a);
UP gcd(const UP& a, const UP& b);
// g = s*a + t*b with g monic
UP xgcd(const UP& a, const UP& b, UP& s, UP& t);
// p(c*t + d)
UP compose_affine(const UP& p, const Scalar& c, const Scalar& d);

// Solves rows * x = rhs; rows is a dense matrix with one entry per unknown.
std::optional<std::vector<Scalar>> solve_linear(std::vector<std::vector<Scalar>> rows,
                                                std::vector<Scalar> rhs, size_t unknowns,
                                                Ctx ctx);

// Poly element -> UP. Laurent element -> (UP, shift) with a = t^shift * UP.
UP from_elem(const AlgElem& a, int* shift = nullptr);
AlgElem to_elem(const AlgebraPtr& alg, const UP& p, int shift = 0);

}  // namespace ambiskew::upoly
