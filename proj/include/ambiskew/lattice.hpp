#pragma once

#include <gmpxx.h>

#include <vector>

namespace ambiskew {

using IVec = std::vector<mpz_class>;

// Z-basis of {x in Z^n : rows * x = 0}, by unimodular column reduction.
std::vector<IVec> integer_kernel(const std::vector<IVec>& rows, size_t n);

}  // namespace ambiskew
