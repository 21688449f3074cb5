#include "engset/engset.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <thread>
#include <vector>

#include <doctest.h>

#include "engset/oracle.hpp"
#include "test_util.hpp"

using engset::EngsetInstance;
using engset::eval_f;
using engset::eval_f_prime;
using engset::reciprocal_coefficients;
using testutil::rel_err;
using testutil::sci4;

TEST_CASE("instance validation") {
  CHECK_NOTHROW(EngsetInstance(1, 2, 0.5));
  CHECK_THROWS_AS(EngsetInstance(0, 20, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(EngsetInstance(20, 20, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(EngsetInstance(25, 20, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(EngsetInstance(5, 20, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(EngsetInstance(5, 20, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(EngsetInstance(5, 20, 1.0 / 0.0), std::invalid_argument);
  CHECK_THROWS_AS(EngsetInstance(5, 20, 0.0 / 0.0), std::invalid_argument);
}

TEST_CASE("eval_f domain and fixed values") {
  const EngsetInstance inst(10, 20, 1.0);
  CHECK_THROWS_AS(eval_f(inst, -0.1), std::domain_error);
  CHECK_THROWS_AS(eval_f_prime(inst, -1e-9), std::domain_error);
  CHECK(eval_f(inst, 0.0) == 1.0);  // f(0) = 1 at alpha = 1

  // f(P*) = P* at the known fixed point (m=5, N=20, alpha=1/2).
  const EngsetInstance b5(5, 20, 0.5);
  const double p_star = engset::oracle::reference_solution(b5);
  CHECK(sci4(p_star) == "5.591e-01");
  CHECK(rel_err(eval_f(b5, p_star), p_star) <= 1e-12);
}

TEST_CASE("eval_f on the alternating side matches the oracle") {
  // alpha > 1 and P < 1 - 1/alpha exercises the P-polynomial path.
  const EngsetInstance inst(4, 7, 1.5);
  CHECK(rel_err(eval_f(inst, 0.1), engset::oracle::direct_f(inst, 0.1)) <= 1e-12);
}

TEST_CASE("reciprocal polynomial: positivity and agreement with the oracle") {
  // f(0) = 1 at alpha = 1, so c_0 = 1.
  const auto poly = reciprocal_coefficients(EngsetInstance(3, 20, 1.0));
  REQUIRE(poly.degree() == 3);
  CHECK(poly.coefficients()[0] == doctest::Approx(1.0).epsilon(1e-14));

  const EngsetInstance inst(2, 5, 0.5);
  const auto p25 = reciprocal_coefficients(inst);
  for (double p : {0.0, 0.25, 0.5, 1.0}) {
    const double want = 1.0 / engset::oracle::direct_f(inst, p);
    CHECK(rel_err(p25.evaluate(p), want) <= 1e-13);
  }

  std::mt19937 rng(11);
  std::uniform_int_distribution<int> un(2, 40);
  std::uniform_real_distribution<double> ua(0.05, 3.0);
  for (int i = 0; i < 100; ++i) {
    const int n = un(rng);
    const int m = std::uniform_int_distribution<int>(1, n - 1)(rng);
    const auto c = reciprocal_coefficients(EngsetInstance(m, n, ua(rng)));
    for (double v : c.coefficients()) CHECK(v > 0.0);
  }
}

TEST_CASE("coefficient overflow is reported") {
  // (1/alpha)^Z reaches ~1e360 before the series terminates.
  const EngsetInstance inst(40, 50, 1e-9);
  CHECK_THROWS_AS(reciprocal_coefficients(inst), std::overflow_error);
}

TEST_CASE("derivative: sign, finite differences, slope bound at 0") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> up(0.0, 2.0);
  std::uniform_real_distribution<double> ua(0.1, 2.0);
  std::uniform_int_distribution<int> un(2, 40);
  for (int i = 0; i < 100; ++i) {
    const int n = un(rng);
    const int m = std::uniform_int_distribution<int>(1, n - 1)(rng);
    const EngsetInstance inst(m, n, ua(rng));
    CHECK(eval_f_prime(inst, up(rng)) <= 0.0);
  }

  const EngsetInstance inst(1, 20, 0.25);
  const double h = 1e-6;
  const double fd = (eval_f(inst, 0.5 + h) - eval_f(inst, 0.5 - h)) / (2 * h);
  CHECK(rel_err(eval_f_prime(inst, 0.5), fd) <= 1e-6);

  // |f'(0)| < m/(N-m) <= 1 for alpha <= 1 and N >= 2m.
  std::uniform_real_distribution<double> ua1(0.05, 1.0);
  for (int i = 0; i < 100; ++i) {
    const int n = un(rng);
    const int m = std::uniform_int_distribution<int>(1, n / 2)(rng);
    const EngsetInstance s(m, n, ua1(rng));
    const double bound = static_cast<double>(m) / (n - m);
    CHECK(std::fabs(eval_f_prime(s, 0.0)) < bound);
    CHECK(bound <= 1.0);
  }
}

TEST_CASE("f is strictly decreasing and brackets the fixed point") {
  std::mt19937 rng(23);
  std::uniform_int_distribution<int> un(2, 60);
  std::uniform_real_distribution<double> ua(0.1, 2.0);
  std::uniform_real_distribution<double> up(0.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    const int n = un(rng);
    const int m = std::uniform_int_distribution<int>(1, n - 1)(rng);
    const EngsetInstance inst(m, n, ua(rng));
    CHECK(eval_f(inst, 0.0) > 0.0);
    CHECK(eval_f(inst, 1.0) < 1.0);
    for (int j = 0; j < 200; ++j) {
      double p1 = up(rng), p2 = up(rng);
      if (std::fabs(p1 - p2) < 1e-6) continue;  // ties are unresolvable in double
      if (p1 > p2) std::swap(p1, p2);
      CHECK(eval_f(inst, p1) > eval_f(inst, p2));
    }
  }
}

TEST_CASE("f is convex on [max(0, 1-1/alpha), infinity)") {
  std::mt19937 rng(29);
  std::uniform_int_distribution<int> un(2, 40);
  std::uniform_real_distribution<double> ua(0.1, 2.0);
  for (int i = 0; i < 50; ++i) {
    const int n = un(rng);
    const int m = std::uniform_int_distribution<int>(1, n - 1)(rng);
    const double alpha = ua(rng);
    const EngsetInstance inst(m, n, alpha);
    const double lo = std::max(0.0, 1.0 - 1.0 / alpha);
    std::uniform_real_distribution<double> up(lo, 2.0);
    for (int j = 0; j < 100; ++j) {
      const double p1 = up(rng), p2 = up(rng);
      const double mid = eval_f(inst, 0.5 * (p1 + p2));
      CHECK(mid <= 0.5 * (eval_f(inst, p1) + eval_f(inst, p2)) + 1e-12);
    }
  }
}

TEST_CASE("f is strictly increasing in alpha") {
  std::mt19937 rng(31);
  std::uniform_int_distribution<int> un(2, 40);
  std::uniform_real_distribution<double> ua(0.1, 2.0);
  std::uniform_real_distribution<double> up(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const int n = un(rng);
    const int m = std::uniform_int_distribution<int>(1, n - 1)(rng);
    double a1 = ua(rng), a2 = ua(rng);
    if (std::fabs(a1 - a2) < 1e-3) continue;
    if (a1 > a2) std::swap(a1, a2);
    const double p = up(rng);
    CHECK(eval_f(EngsetInstance(m, n, a1), p) < eval_f(EngsetInstance(m, n, a2), p));
  }
}

TEST_CASE("Q-series and P-polynomial agree where both apply") {
  std::mt19937 rng(37);
  std::uniform_int_distribution<int> un(2, 40);
  std::uniform_real_distribution<double> ua(0.05, 3.0);
  for (int i = 0; i < 100; ++i) {
    const int n = un(rng);
    const int m = std::uniform_int_distribution<int>(1, n - 1)(rng);
    const double alpha = ua(rng);
    const EngsetInstance inst(m, n, alpha);
    // For P >= max(0, 1-1/alpha), eval_f takes the Q-series; the polynomial
    // is valid on all of [0, inf). Compare the two representations.
    const double lo = std::max(0.0, 1.0 - 1.0 / alpha);
    std::uniform_real_distribution<double> up(lo, 2.0);
    for (int j = 0; j < 20; ++j) {
      const double p = up(rng);
      const double via_series = 1.0 / eval_f(inst, p);
      const double via_poly = inst.reciprocal_polynomial().evaluate(p);
      CHECK(rel_err(via_poly, via_series) <= 1e-12);
    }
  }
}

TEST_CASE("lazy coefficient cache is safe under concurrent first use") {
  const EngsetInstance inst(15, 20, 2.0);
  std::vector<std::thread> workers;
  std::vector<double> results(8, 0.0);
  for (int t = 0; t < 8; ++t)
    workers.emplace_back([&, t] {
      double acc = 0.0;
      for (int i = 0; i <= 100; ++i) acc += eval_f(inst, i / 400.0);
      results[t] = acc;
    });
  for (auto& w : workers) w.join();
  for (int t = 1; t < 8; ++t) CHECK(results[t] == results[0]);
}
