#include "maxload/types.hpp"

#include <cctype>
#include <cmath>

#include "maxload/errors.hpp"

namespace maxload {

std::string rational_to_string(const Rational& q) {
    // mpq_rational::str() already prints "p/q" and drops "/1".
    return q.str();
}

namespace {

bool is_integer_literal(const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

}  // namespace

Rational parse_rational(const std::string& s) {
    const auto slash = s.find('/');
    if (slash == std::string::npos) {
        if (!is_integer_literal(s))
            throw InvalidInputError("not an exact rational: '" + s + "'");
        return Rational(BigInt(s));
    }
    const std::string num = s.substr(0, slash);
    const std::string den = s.substr(slash + 1);
    if (!is_integer_literal(num) || !is_integer_literal(den))
        throw InvalidInputError("not an exact rational: '" + s + "'");
    BigInt d(den);
    if (d == 0) throw InvalidInputError("zero denominator in '" + s + "'");
    // mpq canonicalizes (reduces, moves sign to the numerator) on assignment.
    return Rational(BigInt(num), d);
}

std::string bigint_to_string(const BigInt& z) { return z.str(); }

BigInt parse_bigint(const std::string& s) {
    if (!is_integer_literal(s))
        throw InvalidInputError("not an exact integer: '" + s + "'");
    return BigInt(s);
}

std::size_t bit_length(const BigInt& z) {
    if (z == 0) return 0;
    return mpz_sizeinbase(z.backend().data(), 2);
}

unsigned digits_for_bits(unsigned bits) {
    return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 1;
}

Real to_real(const BigInt& v, unsigned digits10) {
    Real r(0, digits10);
    mpfr_set_z(r.backend().data(), v.backend().data(), MPFR_RNDN);
    return r;
}

Real to_real(const Rational& q, unsigned digits10) {
    Real r(0, digits10);
    mpfr_set_q(r.backend().data(), q.backend().data(), MPFR_RNDN);
    return r;
}

}  // namespace maxload
