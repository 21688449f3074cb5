#include "engset/oracle.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace engset::oracle {

namespace {

using BigFloat = boost::multiprecision::cpp_bin_float_50;
using BigInt = boost::multiprecision::cpp_int;

BigInt binomial_exact(int n, int k) {
  BigInt b = 1;
  for (int i = 1; i <= k; ++i) {
    b *= n - k + i;
    b /= i;  // divides exactly at every step
  }
  return b;
}

// The Engset expression at 50-digit precision. Throws at the removable
// discontinuity P = 1 - 1/alpha, where M's denominator is exactly zero.
BigFloat engset_expression(const EngsetInstance& inst, const BigFloat& p) {
  const int m = inst.servers();
  const int n = inst.sources();
  const BigFloat alpha(inst.alpha());
  const BigFloat denom = 1 - alpha * (1 - p);
  if (denom == 0)
    throw std::domain_error(
        "direct_f: P = 1 - 1/alpha is the removable discontinuity of the "
        "raw Engset expression");
  const BigFloat load = alpha / denom;  // M(P)

  std::vector<BigFloat> terms(m + 1);
  BigFloat power = 1;
  for (int x = 0; x <= m; ++x) {
    terms[x] = BigFloat(binomial_exact(n - 1, x)) * power;
    power *= load;
  }
  const BigFloat numerator = terms[m];
  // M may be negative; sum smallest magnitude first.
  std::sort(terms.begin(), terms.end(),
            [](const BigFloat& a, const BigFloat& b) { return abs(a) < abs(b); });
  BigFloat sum = 0;
  for (const BigFloat& t : terms) sum += t;
  return numerator / sum;
}

}  // namespace

double direct_f(const EngsetInstance& inst, double p) {
  if (!(p >= 0.0))
    throw std::domain_error("direct_f: P must be nonnegative and not NaN");
  return engset_expression(inst, BigFloat(p)).convert_to<double>();
}

double reference_solution(const EngsetInstance& inst, double tol) {
  if (!(tol > 0.0))
    throw std::invalid_argument("reference_solution: tol must be positive");
  const BigFloat removable = 1 - 1 / BigFloat(inst.alpha());
  BigFloat lo = 0;  // direct_f(0) - 0 > 0
  BigFloat hi = 1;  // direct_f(1) - 1 < 0
  while ((hi - lo) / 2 > tol) {
    BigFloat mid = (lo + hi) / 2;
    if (mid == removable) mid += (hi - lo) / 1024;
    if (engset_expression(inst, mid) - mid > 0)
      lo = mid;
    else
      hi = mid;
  }
  return ((lo + hi) / 2).convert_to<double>();
}

}  // namespace engset::oracle
