#include "engset/solve.hpp"

#include <cmath>
#include <stdexcept>

namespace engset {

namespace {

void check_config(const SolverConfig& cfg) {
  if (!(cfg.p0 >= 0.0 && cfg.p0 <= 1.0))
    throw std::invalid_argument("SolverConfig: p0 must lie in [0,1]");
  if (!(cfg.tol > 0.0) || !std::isfinite(cfg.tol))
    throw std::invalid_argument("SolverConfig: tol must be positive");
  if (cfg.max_iter < 1)
    throw std::invalid_argument("SolverConfig: max_iter must be >= 1");
}

double residual_at(const EngsetInstance& inst, double p) {
  return eval_f(inst, p) - p;
}

// Shared driver for the two one-step iterations; `step` maps the previous
// iterate to the next one.
template <typename Step>
SolveResult iterate(const EngsetInstance& inst, const SolverConfig& cfg,
                    Method tag, Step step) {
  check_config(cfg);
  SolveResult res;
  res.method = tag;
  double prev = cfg.p0;
  if (cfg.trace) res.trace.push_back(prev);
  for (int n = 1; n <= cfg.max_iter; ++n) {
    const double next = step(prev);
    if (!std::isfinite(next) || next < 0.0) {
      // Not reachable for valid instances (iterates stay positive); kept so
      // a numerical pathology is reported instead of thrown mid-iteration.
      res.p_star = prev;
      res.iterations = n;
      res.status = SolveStatus::diverged;
      res.residual = residual_at(inst, prev);
      return res;
    }
    if (cfg.trace) res.trace.push_back(next);
    if (std::fabs(next - prev) <= cfg.tol) {
      res.p_star = next;
      res.iterations = n;
      res.status = SolveStatus::converged;
      res.residual = residual_at(inst, next);
      return res;
    }
    prev = next;
  }
  res.p_star = prev;
  res.iterations = cfg.max_iter;
  res.status = SolveStatus::max_iter_exceeded;
  res.residual = residual_at(inst, prev);
  return res;
}

}  // namespace

const char* to_string(Method method) {
  switch (method) {
    case Method::bisection: return "bisection";
    case Method::fixed_point: return "fixed-point";
    case Method::newton: return "newton";
    case Method::automatic: return "auto";
  }
  return "?";
}

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::converged: return "converged";
    case SolveStatus::diverged: return "diverged";
    case SolveStatus::max_iter_exceeded: return "max_iter_exceeded";
  }
  return "?";
}

std::optional<Method> method_from_string(const std::string& name) {
  if (name == "bisection") return Method::bisection;
  if (name == "fixed-point") return Method::fixed_point;
  if (name == "newton") return Method::newton;
  if (name == "auto") return Method::automatic;
  return std::nullopt;
}

SolveResult bisect(const EngsetInstance& inst, const SolverConfig& cfg) {
  check_config(cfg);
  SolveResult res;
  res.method = Method::bisection;
  double lo = 0.0;  // f(0) - 0 > 0
  double hi = 1.0;  // f(1) - 1 < 0
  int n = 0;
  while (hi - lo > cfg.tol) {
    const double mid = 0.5 * (lo + hi);
    const double g = eval_f(inst, mid) - mid;
    ++n;
    if (cfg.trace) res.trace.push_back(mid);
    if (g > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  res.p_star = 0.5 * (lo + hi);
  res.iterations = n;
  res.status = SolveStatus::converged;
  res.residual = residual_at(inst, res.p_star);
  return res;
}

SolveResult fixed_point(const EngsetInstance& inst, const SolverConfig& cfg) {
  return iterate(inst, cfg, Method::fixed_point,
                 [&](double p) { return eval_f(inst, p); });
}

SolveResult newton(const EngsetInstance& inst, const SolverConfig& cfg) {
  return iterate(inst, cfg, Method::newton, [&](double p) {
    return p - (eval_f(inst, p) - p) / (eval_f_prime(inst, p) - 1.0);
  });
}

SolveResult solve(int servers, int sources, double alpha,
                  const SolverConfig& cfg, Method method) {
  if (servers < 0) throw std::invalid_argument("solve: servers must be >= 0");
  if (sources < 1) throw std::invalid_argument("solve: sources must be >= 1");
  if (!(alpha >= 0.0) || !std::isfinite(alpha))
    throw std::invalid_argument("solve: alpha must be >= 0 and finite");
  check_config(cfg);

  // Degenerate cases, answered without iterating.
  if (servers == 0 || servers >= sources || alpha == 0.0) {
    SolveResult res;
    res.p_star = servers == 0 ? 1.0 : 0.0;
    res.iterations = 0;
    res.status = SolveStatus::converged;
    res.residual = 0.0;
    res.method = method;
    if (cfg.trace) res.trace.push_back(res.p_star);
    return res;
  }

  const EngsetInstance inst(servers, sources, alpha);
  switch (method) {
    case Method::bisection: return bisect(inst, cfg);
    case Method::fixed_point: return fixed_point(inst, cfg);
    case Method::newton: return newton(inst, cfg);
    case Method::automatic: {
      SolveResult res = newton(inst, cfg);
      if (res.status != SolveStatus::converged) res = bisect(inst, cfg);
      return res;
    }
  }
  throw std::invalid_argument("solve: unknown method");
}

std::optional<int> iteration_bound(const EngsetInstance& inst, int k,
                                   double epsilon) {
  if (inst.alpha() > 1.0)
    throw std::invalid_argument("iteration_bound: requires alpha <= 1");
  if (k < 0) throw std::invalid_argument("iteration_bound: k must be >= 0");
  if (!(epsilon > 0.0 && epsilon <= 1.0))
    throw std::invalid_argument("iteration_bound: epsilon must be in (0,1]");

  double x = 0.0;
  for (int i = 0; i < 2 * k; ++i) x = eval_f(inst, x);
  const double q = std::fabs(eval_f_prime(inst, x));
  if (q >= 1.0) return std::nullopt;
  if (q == 0.0) return 2 * k + 1;
  const double steps = std::ceil(std::log(epsilon * (1.0 - q)) / std::log(q));
  return 2 * k + std::max(1, static_cast<int>(steps));
}

}  // namespace engset
