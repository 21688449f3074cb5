#include "engset/engset.hpp"

#include <cmath>
#include <mutex>
#include <optional>
#include <stdexcept>

namespace engset {

namespace {

// 1/f as a series in Q = P + 1/alpha - 1 with s = N - m:
//
//   g(Q) = sum_{X=0}^{m} m^(X) / (s)_X * Q^X,
//
// term ratio (m-X)/(s+X) * Q. Every term is >= 0 for Q >= 0, so partial
// sums are monotone and there is no cancellation.
double reciprocal_series(int m, int s, double q) {
  double term = 1.0;
  double sum = 1.0;
  for (int x = 0; x < m; ++x) {
    term *= q * (m - x) / (s + x);
    sum += term;
  }
  return sum;
}

// d/dP of the series above (dQ/dP = 1): sum_{X=1}^{m} X m^(X)/(s)_X Q^{X-1}.
double reciprocal_series_derivative(int m, int s, double q) {
  double term = static_cast<double>(m) / s;  // X = 1 term
  double sum = term;
  for (int x = 1; x < m; ++x) {
    term *= q * ((x + 1.0) / x) * (m - x) / (s + x);
    sum += term;
  }
  return sum;
}

// Builds c_Y = m^(Y)/(s)_Y * d_Y for Y = 0..m, where d_Y is the finite
// double sum
//
//   d_Y = sum_{Z=0}^{m-Y} (1/alpha)^Z/Z! * (1+Y)_Z (m-Y)^(Z) / (s+Y)_Z
//                         * (s-1)_{m-Y-Z} / (s+Y+Z)_{m-Y-Z}.
//
// Every factor is positive. The trailing Pochhammer ratio is generated
// downward from Z = m-Y (where it is 1) so that a zero value of (s-1)_k,
// possible when s = 1, is produced by multiplication rather than risked as
// a division. Total work is O(m^2).
ReciprocalPolynomial build_reciprocal(const EngsetInstance& inst) {
  const int m = inst.servers();
  const int n = inst.sources();
  const int s = n - m;
  const double inv_alpha = 1.0 / inst.alpha();

  std::vector<double> coeff(m + 1);
  std::vector<double> tail(m + 1);  // tail[Z] = (s-1)_{len-Z} / (s+Y+Z)_{len-Z}
  double prefactor = 1.0;           // m^(Y) / (s)_Y
  for (int y = 0; y <= m; ++y) {
    const int len = m - y;
    tail[len] = 1.0;
    for (int z = len - 1; z >= 0; --z)
      tail[z] = tail[z + 1] * (n - y - z - 2) / (s + y + z);

    double term = 1.0;  // (1/alpha)^Z/Z! * (1+Y)_Z (m-Y)^(Z) / (s+Y)_Z
    double d = tail[0];
    for (int z = 0; z < len; ++z) {
      term *= inv_alpha * (1.0 + y + z) * (m - y - z) / ((z + 1.0) * (s + y + z));
      d += term * tail[z + 1];
    }
    coeff[y] = prefactor * d;
    prefactor *= static_cast<double>(m - y) / (s + y);
  }

  for (double c : coeff)
    if (!std::isfinite(c))
      throw std::overflow_error(
          "reciprocal_coefficients: coefficient exceeds the double range "
          "(extreme m or 1/alpha)");
  return ReciprocalPolynomial(std::move(coeff), inst.alpha());
}

void check_p(double p) {
  if (!(p >= 0.0))
    throw std::domain_error("eval_f: P must be nonnegative and not NaN");
}

}  // namespace

ReciprocalPolynomial::ReciprocalPolynomial(std::vector<double> coefficients,
                                           double alpha_used)
    : coeffs_(std::move(coefficients)), alpha_(alpha_used) {
  if (coeffs_.empty())
    throw std::invalid_argument("ReciprocalPolynomial: no coefficients");
  if (!(alpha_ > 0.0))
    throw std::invalid_argument("ReciprocalPolynomial: alpha must be > 0");
  for (double c : coeffs_)
    if (!(c > 0.0) || !std::isfinite(c))
      throw std::invalid_argument(
          "ReciprocalPolynomial: coefficients must be finite and positive");
}

double ReciprocalPolynomial::evaluate(double p) const {
  double v = coeffs_.back();
  for (auto it = coeffs_.rbegin() + 1; it != coeffs_.rend(); ++it)
    v = v * p + *it;
  return v;
}

std::pair<double, double> ReciprocalPolynomial::evaluate_with_derivative(
    double p) const {
  double v = coeffs_.back();
  double d = 0.0;
  for (auto it = coeffs_.rbegin() + 1; it != coeffs_.rend(); ++it) {
    d = d * p + v;
    v = v * p + *it;
  }
  return {v, d};
}

struct EngsetInstance::CoeffCache {
  std::once_flag once;
  std::optional<ReciprocalPolynomial> poly;
};

EngsetInstance::EngsetInstance(int servers, int sources, double alpha)
    : servers_(servers),
      sources_(sources),
      alpha_(alpha),
      cache_(std::make_shared<CoeffCache>()) {
  if (servers < 1 || sources < 2 || servers >= sources)
    throw std::invalid_argument("EngsetInstance: requires 0 < m < N");
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw std::invalid_argument(
        "EngsetInstance: alpha must be positive and finite");
}

const ReciprocalPolynomial& EngsetInstance::reciprocal_polynomial() const {
  std::call_once(cache_->once, [this] { cache_->poly = build_reciprocal(*this); });
  return *cache_->poly;
}

ReciprocalPolynomial reciprocal_coefficients(const EngsetInstance& inst) {
  return inst.reciprocal_polynomial();
}

double eval_f(const EngsetInstance& inst, double p) {
  check_p(p);
  const double q = p + 1.0 / inst.alpha() - 1.0;
  if (q >= 0.0)
    return 1.0 / reciprocal_series(inst.servers(),
                                   inst.sources() - inst.servers(), q);
  // Q < 0 happens only for alpha > 1 and P < 1 - 1/alpha.
  return 1.0 / inst.reciprocal_polynomial().evaluate(p);
}

double eval_f_prime(const EngsetInstance& inst, double p) {
  check_p(p);
  const double q = p + 1.0 / inst.alpha() - 1.0;
  double g, gp;
  if (q >= 0.0) {
    const int m = inst.servers();
    const int s = inst.sources() - m;
    g = reciprocal_series(m, s, q);
    gp = reciprocal_series_derivative(m, s, q);
  } else {
    std::tie(g, gp) = inst.reciprocal_polynomial().evaluate_with_derivative(p);
  }
  return -gp / (g * g);
}

}  // namespace engset
