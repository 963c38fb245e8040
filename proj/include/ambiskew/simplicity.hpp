#pragma once

#include "ambiskew/ambiskew.hpp"
#include "ambiskew/verdict.hpp"

namespace ambiskew {

// How v^(m) behaves as m grows, for T = rho * alpha acting on v.
struct VmShape {
  enum Kind { Eigen, Periodic, Unknown } kind = Unknown;
  Scalar mu;          // Eigen: T(v) = mu v
  long period = 0;    // Periodic: T^period(v) = v
};
VmShape vm_shape(const Ring& r, const Bounds& bounds);

// v^(m) by binary splitting: v^(a+b) = v^(a) + rho^a alpha^a(v^(b)).
AlgElem vm_fast(const Ring& r, long m);

// First q >= q_min (exhaustive) at which q*a + b is a non-unit.
struct LinearUnits {
  Status status = Status::Inconclusive;   // Holds: a unit for every q >= q_min
  long q = -1;
  json witness = json::object();
  std::vector<long> checked;
};
LinearUnits linear_family_units(const AlgElem& a, const AlgElem& b, long q_min);

// v^(m) is a unit for every m >= 1.
Verdict units_for_all_m(const AlgebraPtr& r, const Bounds& bounds = {});

Verdict simple_char0(const AlgebraPtr& r, const Bounds& bounds = {});
Verdict simple_charp(const AlgebraPtr& r, const Bounds& bounds = {});
// Level-by-level criterion for a ring whose base is itself an ambiskew ring.
Verdict simple_iterated(const AlgebraPtr& r, const Bounds& bounds = {});
// Dispatches on the characteristic and on the shape of the base.
Verdict ring_simple(const AlgebraPtr& r, const Bounds& bounds = {});

// Order of an automorphism: k > 0 finite, 0 proved infinite, -1 undecided.
long auto_order(const AutoPtr& sigma, const Bounds& bounds = {});
Verdict skew_laurent_simple(const AlgebraPtr& a, const AutoPtr& sigma, const Bounds& bounds = {});

}  // namespace ambiskew
