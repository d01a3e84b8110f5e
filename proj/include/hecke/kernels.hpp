#pragma once

// Dense exact linear-algebra kernels used by the corner analysis. Each kernel
// has a serial reference that follows the textbook definition and an OpenMP
// version; tests hold the two to exact agreement and bench/ compares speed.

#include "hecke/matrix.hpp"

#include <cstddef>
#include <vector>

namespace hecke {

class RegularRep;

enum class Execution { Serial, Parallel };

namespace kernels {

// sum_x M(x) p M(x)^-1 with dense matrix products.
RationalMatrix conjugation_sum_serial(const RegularRep& rep, const RationalMatrix& p);
// Same sum; uses (M(x) p M(x)^-1)[i][j] = p[x^-1 i][x^-1 j], rows in parallel.
RationalMatrix conjugation_sum_parallel(const RegularRep& rep, const RationalMatrix& p);

// Row x is p M(x) p flattened row-major.
RationalMatrix corner_span_serial(const RegularRep& rep, const RationalMatrix& p);
RationalMatrix corner_span_parallel(const RegularRep& rep, const RationalMatrix& p);

// Gauss-Jordan elimination over Q.
std::size_t rank_serial(RationalMatrix m);
// Row echelon elimination over Q restricted to the pivot row's support;
// the row updates below each pivot run in parallel.
std::size_t rank_parallel(const RationalMatrix& m);

RationalMatrix conjugation_sum(const RegularRep& rep, const RationalMatrix& p, Execution exec);
RationalMatrix corner_span(const RegularRep& rep, const RationalMatrix& p, Execution exec);
std::size_t rank(const RationalMatrix& m, Execution exec);

}  // namespace kernels
}  // namespace hecke
