#pragma once

#include <span>

namespace engset::turan {

// Parameters for the Turan-type inequality on the family
//   h_n(x) = 2F1(1+n, -b+n; c+n; -x),  n in {0, 1, 2}:
//
//   b(c+1) (h_1(x))^2  >=  (b-1)c h_0(x) h_2(x)   for all x >= 0,
//
// and x |-> h_1(x) / (h_0(x))^2 is strictly decreasing on [0, inf).
struct TuranInstance {
  TuranInstance(int b, double c, double x);
  int b;     // positive integer
  double c;  // positive real
  double x;  // nonnegative real
};

// The inequality is exact but floating point is not; checks accept gaps
// down to -kGapSlack, and the ratio check treats differences within
// kRatioTieSlack as ties.
inline constexpr double kGapSlack = 1e-12;
inline constexpr double kRatioTieSlack = 1e-12;

// h_n(x) for n in {0, 1, 2}. The series terminates because -b+n <= 0;
// (n = 2, b = 1) would not terminate and is rejected with
// std::invalid_argument (the inequality's right side is zero there, so no
// h_2 value is ever needed).
double h(int n, const TuranInstance& inst);

// b(c+1) h_1^2 - (b-1)c h_0 h_2; for b = 1 the right side is identically
// zero and the b(c+1) h_1^2 term is returned directly.
double turan_gap(const TuranInstance& inst);

// True iff h_1(x)/(h_0(x))^2 is strictly decreasing across consecutive
// points of `grid` (strictly increasing, all >= 0; throws
// std::invalid_argument otherwise), up to kRatioTieSlack.
bool ratio_monotone_check(int b, double c, std::span<const double> grid);

}  // namespace engset::turan
