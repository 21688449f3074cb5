#pragma once

#include <optional>
#include <string>
#include <vector>

#include "engset/engset.hpp"

namespace engset {

enum class Method { bisection, fixed_point, newton, automatic };
enum class SolveStatus { converged, diverged, max_iter_exceeded };

const char* to_string(Method method);
const char* to_string(SolveStatus status);
std::optional<Method> method_from_string(const std::string& name);

// 2^-24, the stopping tolerance used throughout.
inline constexpr double kDefaultTol = 0x1p-24;

struct SolverConfig {
  double p0 = 0.5;        // initial guess, in [0,1]
  double tol = kDefaultTol;
  int max_iter = 10000;
  bool trace = false;     // record the iterate sequence
};

struct SolveResult {
  double p_star = 0.0;
  int iterations = 0;
  SolveStatus status = SolveStatus::diverged;
  double residual = 0.0;  // f(p_star) - p_star
  Method method = Method::automatic;
  std::vector<double> trace;  // P_0, P_1, ... when requested, else empty
};

// Bisection on P |-> f(P) - P over [0,1]. The bracket is guaranteed
// (f(0) > 0 and f(1) < 1), so this always converges; the halved interval's
// width after n steps is exactly 2^-n, giving ceil(-lg tol) iterations
// independent of the instance.
SolveResult bisect(const EngsetInstance& inst, const SolverConfig& cfg);

// Fixed point iteration P_n = f(P_{n-1}), stopping at the first n with
// |P_n - P_{n-1}| <= tol. Hitting max_iter reports max_iter_exceeded, which
// is how divergence manifests under an iteration cap.
SolveResult fixed_point(const EngsetInstance& inst, const SolverConfig& cfg);

// Newton's method on P |-> f(P) - P:
//   P_n = P_{n-1} - (f(P_{n-1}) - P_{n-1}) / (f'(P_{n-1}) - 1),
// same stopping rule as fixed_point. Since f' <= 0 the denominator is at
// most -1, so no division guard is needed. Iterates are not clamped to
// [0,1]; they stay positive and f is defined on all of [0, inf). For
// alpha <= 1 convergence holds from any P_0 in [0,1].
SolveResult newton(const EngsetInstance& inst, const SolverConfig& cfg);

// Front end handling the degenerate cases before an instance is built:
//   m = 0      -> P = 1 (every request blocked)
//   m >= N     -> P = 0 (every request served at once)
//   alpha = 0  -> P = 0 (no traffic)
// each reported converged with 0 iterations. Otherwise dispatches on
// `method`; `automatic` runs Newton and falls back to bisection if Newton
// fails to converge within the cap. The result's method tag is the method
// that produced it.
//
// Throws std::invalid_argument for servers < 0, sources < 1, alpha < 0,
// non-finite alpha, or an invalid config.
SolveResult solve(int servers, int sources, double alpha,
                  const SolverConfig& cfg, Method method);

// A-priori bound on fixed-point iterations for alpha <= 1 (throws
// std::invalid_argument otherwise, or for k < 0 or epsilon outside (0,1]).
//
// With q = |f'(f^{2k}(0))|: if q >= 1 the bound is inapplicable at this k
// (returns nullopt); otherwise returns B = 2k + ceil(log_q(eps - eps q))
// such that |P_B - P*| <= eps for the iteration started at P_0 = 0.
std::optional<int> iteration_bound(const EngsetInstance& inst, int k,
                                   double epsilon);

}  // namespace engset
