#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <string>

namespace maxload {

// Exact scalars. Rational keeps gcd-reduced canonical form after every
// operation (mpq under the hood): denominators positive, fractions always
// reduced, so string round-trips are stable.
using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

// Variable-precision float (mpfr). Precision is tracked per value; fresh
// values pick up the thread default, see PrecisionGuard.
using Real = boost::multiprecision::mpfr_float;

// "p/q" with the "/q" omitted when q == 1; exact decimal digits.
std::string rational_to_string(const Rational& q);

// Accepts "p" and "p/q" (q > 0 after canonicalization). Throws
// InvalidInputError on anything else (floats, empty, garbage).
Rational parse_rational(const std::string& s);

std::string bigint_to_string(const BigInt& z);
BigInt parse_bigint(const std::string& s);

// Bit length of |z| (0 for z == 0); used as the pivot-size proxy in exact
// elimination.
std::size_t bit_length(const BigInt& z);

// Decimal digits that cover `bits` of mantissa (ceil(bits*log10(2))).
unsigned digits_for_bits(unsigned bits);

// Correctly-rounded conversions at an explicit precision. These go through
// mpfr_set_z / mpfr_set_q; the boost two-argument (value, digits10)
// constructor silently routes gmp payloads through a ~64-bit intermediate and
// loses low bits of wide values, so never build a Real from a BigInt or
// Rational any other way.
Real to_real(const BigInt& v, unsigned digits10);
Real to_real(const Rational& q, unsigned digits10);

// Scoped override of the thread-default mpfr precision (decimal digits).
class PrecisionGuard {
  public:
    explicit PrecisionGuard(unsigned digits10)
        : saved_(Real::default_precision()) {
        Real::default_precision(digits10);
    }
    ~PrecisionGuard() { Real::default_precision(saved_); }
    PrecisionGuard(const PrecisionGuard&) = delete;
    PrecisionGuard& operator=(const PrecisionGuard&) = delete;

  private:
    unsigned saved_;
};

}  // namespace maxload
