#pragma once

#include <memory>
#include <utility>
#include <vector>

namespace engset {

// 1/f(P) as a polynomial in P with strictly positive coefficients,
//
//   1/f(P) = c_0 + c_1 P + ... + c_m P^m,   c_Y > 0,
//
// valid for all P >= 0. Evaluating it by Horner's scheme involves no
// cancellation, which is what makes it useful for P + 1/alpha - 1 < 0
// where the Q-series alternates.
class ReciprocalPolynomial {
 public:
  ReciprocalPolynomial(std::vector<double> coefficients, double alpha_used);

  const std::vector<double>& coefficients() const { return coeffs_; }
  double alpha_used() const { return alpha_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

  double evaluate(double p) const;
  // Returns {value, derivative} in one Horner pass.
  std::pair<double, double> evaluate_with_derivative(double p) const;

 private:
  std::vector<double> coeffs_;  // c_0..c_m
  double alpha_;
};

// One M/M/m/m/N queueing problem: m servers, N sources, per-source offered
// traffic alpha (erlangs). Requires 0 < m < N and 0 < alpha < inf; the
// degenerate cases (m = 0, m >= N, alpha = 0) are resolved before an
// instance exists (see solve()).
//
// Instances are immutable. The reciprocal-polynomial coefficients are an
// O(m^2) build, so they are computed lazily on first use and cached;
// initialization is thread-safe (single computation, many readers), and
// copies share the cache.
class EngsetInstance {
 public:
  EngsetInstance(int servers, int sources, double alpha);

  int servers() const { return servers_; }
  int sources() const { return sources_; }
  double alpha() const { return alpha_; }

  const ReciprocalPolynomial& reciprocal_polynomial() const;

 private:
  int servers_;
  int sources_;
  double alpha_;
  struct CoeffCache;
  std::shared_ptr<CoeffCache> cache_;
};

// Coefficients of 1/f as a polynomial in P. Throws std::overflow_error if a
// coefficient leaves the double range (extreme m or 1/alpha).
ReciprocalPolynomial reciprocal_coefficients(const EngsetInstance& inst);

// The Engset map f evaluated at P >= 0 (throws std::domain_error for P < 0;
// f may have nonremovable discontinuities at negative P).
//
// Evaluation picks between two cancellation-free forms of
// 1/f(P) = 2F1(1, -m; N-m; 1-P-1/alpha) depending on Q = P + 1/alpha - 1:
//   Q >= 0: the series in Q, whose terms are all nonnegative (O(m));
//   Q <  0: Horner on the positive-coefficient polynomial in P.
// Neither form divides by 1 - alpha(1-P), so the removable discontinuity
// of the raw Engset expression at P = 1 - 1/alpha never arises.
double eval_f(const EngsetInstance& inst, double p);

// f'(P) <= 0, computed as -g'(P) f(P)^2 with g = 1/f and g' evaluated by the
// same dual strategy as eval_f. Throws std::domain_error for P < 0.
double eval_f_prime(const EngsetInstance& inst, double p);

}  // namespace engset
