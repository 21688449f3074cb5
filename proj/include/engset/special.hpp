#pragma once

namespace engset {

// Rising factorial (c)_x = c (c+1) ... (c+x-1), with (c)_0 = 1.
double pochhammer(double c, int x);

// Falling factorial c^(x) = c (c-1) ... (c-x+1) = (-c)_x (-1)^x, with c^(0) = 1.
double falling_factorial(double c, int x);

// Terminating Gauss hypergeometric series
//
//                          |b|   (a)_X (b)_X   z^X
//   2F1(a, b; c; z)  =  sum     ----------- * ---
//                          X=0     (c)_X       X!
//
// for b a nonpositive integer, accumulated with the running-term ratio
//   term_{X+1} = term_X * (a+X)(b+X) / ((c+X)(X+1)) * z.
//
// Throws std::invalid_argument if b > 0 or if c+X vanishes for some
// 0 <= X < |b| (a Pochhammer denominator hits zero before termination).
double hyp2f1_terminating(double a, int b, double c, double z);

}  // namespace engset
