#pragma once

#include "engset/engset.hpp"

namespace engset::oracle {

// The Engset expression evaluated exactly as written,
//
//              binom(N-1, m) M^m                      alpha
//   f(P) = ------------------------- ,   M = -------------------- ,
//           sum_X binom(N-1, X) M^X           1 - alpha (1 - P)
//
// with exact integer binomial coefficients and 50-digit floating point for
// M and the sum (accumulated smallest-magnitude first). Deliberately slow
// and independent of every code path in the main library; exists to verify
// them.
//
// Throws std::domain_error for P < 0 and at the removable discontinuity
// P = 1 - 1/alpha (that point is handled by the main path, not here).
double direct_f(const EngsetInstance& inst, double p);

// High-precision bisection of P |-> direct_f(P) - P over [0,1] to
// half-width <= tol, stepping around P = 1 - 1/alpha if a midpoint lands
// on it. Ground truth for tests.
double reference_solution(const EngsetInstance& inst, double tol = 1e-14);

}  // namespace engset::oracle
