#include "engset/turan.hpp"

#include <cmath>
#include <stdexcept>

#include "engset/special.hpp"

namespace engset::turan {

TuranInstance::TuranInstance(int b_, double c_, double x_)
    : b(b_), c(c_), x(x_) {
  if (b < 1) throw std::invalid_argument("TuranInstance: b must be >= 1");
  if (!(c > 0.0) || !std::isfinite(c))
    throw std::invalid_argument("TuranInstance: c must be positive");
  if (!(x >= 0.0) || !std::isfinite(x))
    throw std::invalid_argument("TuranInstance: x must be >= 0");
}

double h(int n, const TuranInstance& inst) {
  if (n < 0 || n > 2)
    throw std::invalid_argument("h: n must be one of {0, 1, 2}");
  if (n == 2 && inst.b == 1)
    throw std::invalid_argument(
        "h: n = 2 with b = 1 gives a non-terminating series (and the "
        "inequality's right side is zero, so h_2 is never needed)");
  return hyp2f1_terminating(1.0 + n, n - inst.b, inst.c + n, -inst.x);
}

double turan_gap(const TuranInstance& inst) {
  const double h1 = h(1, inst);
  const double lhs = inst.b * (inst.c + 1.0) * h1 * h1;
  if (inst.b == 1) return lhs;  // (b-1)c h_0 h_2 = 0
  return lhs - (inst.b - 1.0) * inst.c * h(0, inst) * h(2, inst);
}

bool ratio_monotone_check(int b, double c, std::span<const double> grid) {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] >= 0.0))
      throw std::invalid_argument("ratio_monotone_check: grid must be >= 0");
    if (i > 0 && !(grid[i] > grid[i - 1]))
      throw std::invalid_argument(
          "ratio_monotone_check: grid must be strictly increasing");
  }
  double prev = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const TuranInstance inst(b, c, grid[i]);
    const double h0 = h(0, inst);
    const double ratio = h(1, inst) / (h0 * h0);
    if (i > 0 && !(ratio < prev + kRatioTieSlack)) return false;
    prev = ratio;
  }
  return true;
}

}  // namespace engset::turan
