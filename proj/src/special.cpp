#include "engset/special.hpp"

#include <stdexcept>

namespace engset {

double pochhammer(double c, int x) {
  if (x < 0) throw std::invalid_argument("pochhammer: x must be nonnegative");
  double r = 1.0;
  for (int i = 0; i < x; ++i) r *= c + i;
  return r;
}

double falling_factorial(double c, int x) {
  if (x < 0)
    throw std::invalid_argument("falling_factorial: x must be nonnegative");
  double r = 1.0;
  for (int i = 0; i < x; ++i) r *= c - i;
  return r;
}

double hyp2f1_terminating(double a, int b, double c, double z) {
  if (b > 0)
    throw std::invalid_argument(
        "hyp2f1_terminating: b must be a nonpositive integer");
  const int last = -b;  // series has terms X = 0..|b|
  double term = 1.0;
  double sum = 1.0;
  for (int x = 0; x < last; ++x) {
    if (c + x == 0.0)
      throw std::invalid_argument(
          "hyp2f1_terminating: denominator parameter c+X vanishes before the "
          "series terminates");
    term *= (a + x) * (b + x) / ((c + x) * (x + 1)) * z;
    sum += term;
  }
  return sum;
}

}  // namespace engset
