#pragma once

// Simplicity of the localization S of a conformal ambiskew ring at the
// powers of its Casimir element, decided inside the base algebra.

#include <optional>
#include <vector>

#include "ambiskew/ambiskew.hpp"
#include "ambiskew/verdict.hpp"

namespace ambiskew {

// Nonzero c with gamma(c) = rho^m c, alpha(c) = rho^j c and
// c * gamma^j(a) = alpha^m(a) * c.
struct SpecialElement {
  AlgElem c;
  long m = 0;
  long j = 0;
};

enum class SpecialMode { All, ZeroMOnly };

// Holds: `found` is set. Fails: no special element with (m, j) != (0, 0)
// (with m = 0 in ZeroMOnly mode). Inconclusive: unsupported data.
struct SpecialSearch {
  Status status = Status::Inconclusive;
  std::optional<SpecialElement> found;
  std::string reason;
};
SpecialSearch special_element_search(const AlgebraPtr& a, const AutoPtr& alpha,
                                     const AutoPtr& gamma, const Scalar& rho, SpecialMode mode);
bool is_special(const AutoPtr& alpha, const AutoPtr& gamma, const Scalar& rho,
                const SpecialElement& s);

// Throws ValidationError for singular data.
Verdict localized_simple(const AlgebraPtr& r, const Bounds& bounds = {});

// q_ii = 1, q_ji = q_ij^-1.
using TorusMatrix = std::vector<std::vector<Scalar>>;
std::optional<std::string> validate_torus(const TorusMatrix& q);
// Simple iff prod_r q_{r,i}^{m_r} = 1 for all i forces m = 0.
Verdict quantum_torus_simple(const TorusMatrix& q);

}  // namespace ambiskew
