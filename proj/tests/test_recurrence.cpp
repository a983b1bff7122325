#include "doctest.h"

#include <vector>

#include "maxload/engine.hpp"
#include "maxload/errors.hpp"
#include "maxload/recurrence.hpp"

using namespace maxload;

namespace {

// The operator (T-1)A(T) - A(T-1) - (T-1)A(T-2) = 0 in canonical form,
// initial conditions attached for (2,1).
RecurrenceOperator op21() {
    RecurrenceOperator op;
    op.spec = {2, 1};
    op.polys = {IntPolynomial({BigInt(-1), BigInt(1)}), IntPolynomial({BigInt(-1)}),
                IntPolynomial({BigInt(1), BigInt(-1)})};
    op.validFrom = 2;
    op.initial = {Rational(1, 2), Rational(1, 2)};
    return op;
}

std::vector<std::vector<Rational>> rows(std::initializer_list<std::vector<Rational>> r) {
    return std::vector<std::vector<Rational>>(r);
}

}  // namespace

TEST_CASE("apply evaluates the defining sum") {
    const auto op = op21();
    const auto seq = a_sequence({2, 1}, 12);
    // (T-1)A(T) - A(T-1) - (T-1)A(T-2) vanishes for every T >= 3.
    for (long long T = 3; T <= 12; ++T) CHECK(op.apply(seq, T) == 0);
    // And the residual is the actual defect when the sequence is wrong.
    auto broken = seq;
    broken[9] += 1;  // A(10) off by one
    CHECK(op.apply(broken, 10) == Rational(9));   // p0(10) = T-1 = 9
    CHECK(op.apply(broken, 11) == Rational(-1));  // p1 coefficient
    CHECK(op.apply(broken, 12) == Rational(-11)); // p2(12) = 1-T = -11
}

TEST_CASE("annihilates checks the whole range and rejects perturbations") {
    const auto op = op21();
    const auto seq = a_sequence({2, 1}, 50);
    CHECK(annihilates(op, seq, 3, 50));
    auto broken = seq;
    broken[30] += Rational(1, 1000000);
    CHECK(!annihilates(op, broken, 3, 50));
    CHECK(annihilates(op, broken, 3, 28));  // range before the defect still fine
}

TEST_CASE("normalize clears denominators, content, and sign") {
    // Rows encode (1/3)(T-1)A(T) - (1/3)A(T-1) - (1/3)(T-1)A(T-2), a
    // rational multiple of the canonical operator.
    const auto raw = rows({{Rational(-1, 3), Rational(1, 3)},
                           {Rational(-1, 3)},
                           {Rational(1, 3), Rational(-1, 3)}});
    const auto op = normalize_operator({2, 1}, raw);
    CHECK(op == [] {
        auto expect = op21();
        expect.initial.clear();  // normalize leaves initials empty
        return expect;
    }());

    // A negated multiple lands on the same canonical form (sign rule).
    auto negated = raw;
    for (auto& row : negated)
        for (auto& c : row) c = -c * Rational(7, 2);
    CHECK(normalize_operator({2, 1}, negated) == normalize_operator({2, 1}, raw));
}

TEST_CASE("normalize drops zero edge polynomials and re-indexes the shift") {
    // Rows for 0·A(T) + p(T)A(T-1) + q(T)A(T-2): after dropping the leading
    // zero the relation reads p(S+1)A(S) + q(S+1)A(S-1) = 0 in S = T-1, so
    // survivors are Taylor-shifted by one.
    const auto shifted = normalize_operator(
        {2, 1}, rows({{}, {Rational(-1), Rational(1)}, {Rational(-1)}}));
    // (T-1)A(T-1) - A(T-2) = 0 at T = S+1 reads S·A(S) - A(S-1) = 0.
    const auto direct = normalize_operator(
        {2, 1}, rows({{Rational(0), Rational(1)}, {Rational(-1)}}));
    CHECK(shifted.order() == 1);
    CHECK(shifted == direct);

    // Trailing zero polynomials just shorten the order.
    const auto trimmed = normalize_operator(
        {2, 1}, rows({{Rational(1)}, {Rational(-1)}, {}, {}}));
    CHECK(trimmed.order() == 1);
    CHECK(trimmed.polys[0] == IntPolynomial({BigInt(1)}));
    CHECK(trimmed.polys[1] == IntPolynomial({BigInt(-1)}));
}

TEST_CASE("validFrom respects positive roots of p0") {
    // p0 = T - 6 vanishes at T = 6; the index at the root is served from
    // initial conditions, so stepping starts after validFrom = 1 + root.
    const auto op = normalize_operator(
        {2, 1}, rows({{Rational(-6), Rational(1)}, {Rational(1)}}));
    CHECK(op.order() == 1);
    CHECK(op.validFrom == 7);  // max(order 1, 1 + root 6)

    // Without positive roots the order wins.
    const auto plain = normalize_operator(
        {3, 1}, rows({{Rational(1), Rational(1)}, {}, {Rational(1)}}));
    CHECK(plain.validFrom == 2);
}

TEST_CASE("attach_initials copies the prefix and validates length") {
    auto op = normalize_operator(
        {2, 1}, rows({{Rational(-1), Rational(1)}, {Rational(-1)}, {Rational(1), Rational(-1)}}));
    const auto seq = a_sequence({2, 1}, 10);
    attach_initials(op, seq);
    REQUIRE(op.initial.size() == 2);
    CHECK(op.initial[0] == Rational(1, 2));
    CHECK(op.initial[1] == Rational(1, 2));

    auto tooShort = op;
    tooShort.initial.clear();
    CHECK_THROWS_AS(attach_initials(tooShort, std::vector<Rational>{Rational(1, 2)}),
                    InvalidInputError);
}

TEST_CASE("validate_operator rejects structural breakage") {
    const auto good = op21();
    CHECK_NOTHROW(validate_operator(good));

    auto scaled = good;  // common content 2
    for (auto& p : scaled.polys)
        for (auto& c : p.coeffs) c *= 2;
    CHECK_THROWS_AS(validate_operator(scaled), InvalidInputError);

    auto negLead = good;  // leading coefficient of p0 must be positive
    for (auto& p : negLead.polys) p.negate();
    CHECK_THROWS_AS(validate_operator(negLead), InvalidInputError);

    auto rootInside = good;  // p0 = T-5 vanishes at T = 5 > validFrom = 2
    rootInside.polys[0] = IntPolynomial({BigInt(-5), BigInt(1)});
    CHECK_THROWS_AS(validate_operator(rootInside), InvalidInputError);

    auto badInitial = good;
    badInitial.initial.pop_back();
    CHECK_THROWS_AS(validate_operator(badInitial), InvalidInputError);

    auto zeroLead = good;
    zeroLead.polys[0] = IntPolynomial();
    CHECK_THROWS_AS(validate_operator(zeroLead), InvalidInputError);
}

TEST_CASE("degree reports the max over coefficient polynomials") {
    const auto op = op21();
    CHECK(op.order() == 2);
    CHECK(op.degree() == 1);
}
