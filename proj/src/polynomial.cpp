#include "maxload/polynomial.hpp"

#include "maxload/errors.hpp"

namespace maxload {

void IntPolynomial::trim() {
    while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
}

BigInt IntPolynomial::eval(const BigInt& x) const {
    BigInt acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Real IntPolynomial::eval_real(const Real& x) const {
    Real acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + Real(*it);
    return acc;
}

IntPolynomial IntPolynomial::shifted(long long a) const {
    if (is_zero() || a == 0) return *this;
    std::vector<BigInt> c = coeffs;
    const int deg = degree();
    const BigInt shift(a);
    // Repeated Horner: after pass i, c holds the coefficients of the Taylor
    // expansion around -a up to position i.
    for (int i = 0; i < deg; ++i)
        for (int j = deg - 1; j >= i; --j) c[j] += shift * c[j + 1];
    return IntPolynomial(std::move(c));
}

BigInt IntPolynomial::content() const {
    BigInt g = 0;
    for (const auto& c : coeffs) {
        g = gcd(g, c);
        if (g == 1) break;
    }
    return abs(g);
}

void IntPolynomial::negate() {
    for (auto& c : coeffs) c = -c;
}

void IntPolynomial::divide_exact(const BigInt& d) {
    for (auto& c : coeffs) {
        BigInt q, rem;
        divide_qr(c, d, q, rem);
        if (rem != 0) throw Error("internal: inexact polynomial division");
        c = std::move(q);
    }
}

std::string poly_to_string(const IntPolynomial& p, const std::string& var) {
    if (p.is_zero()) return "0";
    std::string out;
    for (int d = p.degree(); d >= 0; --d) {
        const BigInt& c = p.coeffs[static_cast<std::size_t>(d)];
        if (c == 0) continue;
        const bool neg = c < 0;
        const BigInt mag = abs(c);
        if (out.empty()) {
            if (neg) out += "-";
        } else {
            out += neg ? " - " : " + ";
        }
        const bool unitCoeff = (mag == 1) && d > 0;
        if (!unitCoeff) out += bigint_to_string(mag);
        if (d > 0) {
            if (!unitCoeff) out += "*";
            out += var;
            if (d > 1) out += "^" + std::to_string(d);
        }
    }
    return out;
}

long long largest_positive_integer_root(const IntPolynomial& p) {
    if (p.is_zero()) return 0;
    if (p.degree() == 0) return 0;
    BigInt maxabs = 0;
    for (const auto& c : p.coeffs)
        if (abs(c) > maxabs) maxabs = abs(c);
    const BigInt lead = abs(p.coeffs.back());
    BigInt bound = 1 + maxabs / lead + 1;  // Cauchy bound, rounded up
    constexpr long long kScanCap = 1ll << 21;
    long long hi = bound > kScanCap ? kScanCap : bound.convert_to<long long>();
    long long best = 0;
    for (long long t = 1; t <= hi; ++t)
        if (p.eval(t) == 0) best = t;
    return best;
}

}  // namespace maxload
