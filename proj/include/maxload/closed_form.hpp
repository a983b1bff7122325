#pragma once

#include "maxload/problem.hpp"
#include "maxload/types.hpp"

namespace maxload {

// A(2,1;T) for odd T: with T = 2k-1, A = (2k-1)! / (2^(2k-1) * ((k-1)!)^2).
// Rejects even T (the closed form is stated for odd arguments only).
Rational closed_form_n2(long long T);

// Heuristic constant (r/n) * sqrt(pi * ln n) * ln(n/r), natural logs.
// Requires n >= 2; returns 0 for r == n.
double heuristic_constant(const ProblemSpec& spec);

// Same, at `digits` decimal digits of working precision.
Real heuristic_constant_real(const ProblemSpec& spec, unsigned digits);

}  // namespace maxload
