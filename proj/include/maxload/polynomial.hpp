#pragma once

#include <string>
#include <vector>

#include "maxload/types.hpp"

namespace maxload {

// Dense integer polynomial, coefficients ascending by degree, always trimmed
// (no trailing zero coefficients). The zero polynomial has no coefficients.
struct IntPolynomial {
    std::vector<BigInt> coeffs;

    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<BigInt> c) : coeffs(std::move(c)) { trim(); }

    bool is_zero() const { return coeffs.empty(); }
    int degree() const { return static_cast<int>(coeffs.size()) - 1; }  // -1 for zero

    void trim();

    BigInt eval(const BigInt& x) const;
    BigInt eval(long long x) const { return eval(BigInt(x)); }
    Real eval_real(const Real& x) const;

    // p(X + a) for integer a (classic in-place synthetic-division shift).
    IntPolynomial shifted(long long a) const;

    // gcd of |coefficients|; 0 for the zero polynomial.
    BigInt content() const;

    void negate();
    void divide_exact(const BigInt& d);

    friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;
};

// Largest integer root of p in [1, inf), or 0 if none. Scans 1..B where B is
// the Cauchy bound 1 + max|a_i|/|a_lead| (capped defensively at 2^21; every
// operator this library produces has B far below that).
long long largest_positive_integer_root(const IntPolynomial& p);

// "21*T^5 - 159*T^4 + ... + 450*T - 120" (descending powers); "0" for zero.
std::string poly_to_string(const IntPolynomial& p, const std::string& var = "T");

}  // namespace maxload
