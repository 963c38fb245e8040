#pragma once

// Decision procedures on the coefficient algebra that the ring-level
// criteria delegate to.

#include <optional>
#include <vector>

#include "ambiskew/algebra.hpp"
#include "ambiskew/verdict.hpp"

namespace ambiskew {

// kappa with p == kappa * q, if one exists.
std::optional<Scalar> scalar_ratio(const AlgElem& p, const AlgElem& q);

// gamma with v*a = gamma(a)*v on generators and gamma(v) = v.
std::optional<AutoPtr> normalizing_auto(const AlgElem& v);

// Gamma-simplicity of A. Fails carries an ideal generator g with
// phi(g) = g * h_phi for a unit h_phi and every phi in gamma_set.
Verdict alpha_simple(const AlgebraPtr& a, const std::vector<AutoPtr>& gamma_set,
                     const Bounds& bounds = {});

struct SplitResult {
  Status status = Status::Inconclusive;   // Holds: conformal, Fails: singular
  std::optional<AlgElem> u;
  json certificate = json::object();
  std::string reason;
};

// Solves v = u - rho*alpha(u) ignoring normality of u.
SplitResult linear_split(const AutoPtr& alpha, const AlgElem& v, const Scalar& rho);
// Splitting element: linear solution that is also gamma-normal and gamma-fixed.
SplitResult solve_splitting(const AlgebraPtr& a, const AutoPtr& alpha, const AutoPtr& gamma,
                            const AlgElem& v, const Scalar& rho);

// Exists n >= 0 with u^n in dA. Holds carries n and h with u^n = d*h.
Verdict radical_membership(const AlgElem& u, const AlgElem& d);
// aA + bA = A. Holds carries Bezout coefficients s, t with a*s + b*t = 1.
Verdict comaximal(const AlgElem& a, const AlgElem& b);

// Element of a character family with prescribed character values.
AlgElem from_characters(const AlgebraPtr& a, const std::vector<Scalar>& vals);

}  // namespace ambiskew
