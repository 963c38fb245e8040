#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ambiskew/algebra.hpp"
#include "ambiskew/verdict.hpp"

namespace ambiskew {

class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct AmbiskewSpec {
  std::string name = "R";
  AlgebraPtr base;
  AutoPtr alpha;
  AutoPtr gamma;          // null: computed from v
  AlgElem v;
  Scalar rho;
  std::string xname = "x", yname = "y";
};

// Validates the data and returns the ring as a Nested algebra.
AlgebraPtr construct(const AmbiskewSpec& spec);

const Ring& ring_of(const AlgebraPtr& r);
AlgElem gen_x(const AlgebraPtr& r);
AlgElem gen_y(const AlgebraPtr& r);
AlgElem x_pow(const AlgebraPtr& r, int i);
AlgElem y_pow(const AlgebraPtr& r, int j);

// Normal form of f * g.
AlgElem r_mul(const AlgElem& f, const AlgElem& g);

// v^(m) = sum_{l<m} rho^l alpha^l(v).
AlgElem v_m(const Ring& r, long m);

// w = xy and its images alpha^m(w) = rho^-m (w - v^(m)); negative m allowed.
AlgElem w_element(const AlgebraPtr& r);
AlgElem alpha_power_w(const AlgebraPtr& r, long m);

// Splitting element and Casimir z = xy - u, or singular with the reason.
struct Conformality {
  Status status = Status::Inconclusive;   // Holds: conformal, Fails: singular
  std::optional<AlgElem> u;
  std::optional<AlgElem> z;
  json certificate = json::object();
  std::string reason;
};
Conformality conformality(const AlgebraPtr& r);

// alpha extended to the ring by y -> lambda y, x -> mu lambda^-1 x.
AutoPtr extend_alpha(const AlgebraPtr& r, const Scalar& lambda, const Scalar& mu);
// gamma-type extension y -> rho y, x -> rho^-1 x.
AutoPtr extend_gamma(const AlgebraPtr& r);

// Z-grading deg y = 1, deg x = -1: degree of a homogeneous element, or
// nullopt when the element is not homogeneous.
std::optional<int> homogeneous_degree(const AlgElem& f);

// Tower below r: [innermost base, ..., r].
std::vector<AlgebraPtr> tower(const AlgebraPtr& r);

}  // namespace ambiskew
