#include "maxload/closed_form.hpp"

#include <cmath>

#include "maxload/combinatorics.hpp"
#include "maxload/errors.hpp"

namespace maxload {

Rational closed_form_n2(long long T) {
    if (T < 1 || T % 2 == 0)
        throw InvalidInputError("closed_form_n2 requires odd T >= 1, got " +
                                std::to_string(T));
    const unsigned k = static_cast<unsigned>((T + 1) / 2);
    const BigInt num = factorial(static_cast<unsigned>(T));
    const BigInt half = factorial(k - 1);
    const BigInt den = pow_bigint(BigInt(2), static_cast<unsigned long long>(T)) * half * half;
    return Rational(num, den);
}

double heuristic_constant(const ProblemSpec& spec) {
    spec.validate();
    if (spec.n < 2)
        throw InvalidInputError("heuristic constant requires n >= 2");
    if (spec.r == spec.n) return 0.0;
    const double n = spec.n, r = spec.r;
    return (r / n) * std::sqrt(M_PI * std::log(n)) * std::log(n / r);
}

Real heuristic_constant_real(const ProblemSpec& spec, unsigned digits) {
    spec.validate();
    if (spec.n < 2)
        throw InvalidInputError("heuristic constant requires n >= 2");
    PrecisionGuard guard(digits + 10);
    if (spec.r == spec.n) return Real(0);
    const Real n(spec.n), r(spec.r);
    const Real pi = 4 * atan(Real(1));
    return (r / n) * sqrt(pi * log(n)) * log(n / r);
}

}  // namespace maxload
