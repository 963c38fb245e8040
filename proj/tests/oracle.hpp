#pragma once

// Independent reference computations used to cross-check the library.

#include "ambiskew/ambiskew.hpp"

namespace oracle {

using namespace ambiskew;

// Normal form of f*g by rewriting words in x, y and base elements:
//   a x -> x beta^-1(a),  y a -> alpha(a) y,  y x -> rho^-1 x y - rho^-1 v.
AlgElem word_product(const AlgElem& f, const AlgElem& g);

// v^(m) as the plain sum of rho^l alpha^l(v), alpha^l applied l times.
AlgElem naive_vm(const Ring& r, long m);

// Smallest m <= m_max with v^(m) a non-unit, or 0.
long first_nonunit_m(const Ring& r, long m_max);

}  // namespace oracle
