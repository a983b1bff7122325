#include "doctest.h"

#include <vector>

#include "maxload/engine.hpp"
#include "maxload/errors.hpp"
#include "maxload/evaluate.hpp"
#include "maxload/guess.hpp"

using namespace maxload;

namespace {

RecurrenceOperator op21() {
    RecurrenceOperator op;
    op.spec = {2, 1};
    op.polys = {IntPolynomial({BigInt(-1), BigInt(1)}), IntPolynomial({BigInt(-1)}),
                IntPolynomial({BigInt(1), BigInt(-1)})};
    op.validFrom = 2;
    op.initial = {Rational(1, 2), Rational(1, 2)};
    return op;
}

// A(T) - A(T-1) = 0 with A(1) = 7: the constant solution.
RecurrenceOperator constOp() {
    RecurrenceOperator op;
    op.spec = {2, 1};
    op.polys = {IntPolynomial({BigInt(1)}), IntPolynomial({BigInt(-1)})};
    op.validFrom = 1;
    op.initial = {Rational(7)};
    return op;
}

RecurrenceOperator guessed(const ProblemSpec& spec, long long terms, int maxOrd, int maxDeg) {
    const auto seq = a_sequence(spec, terms);
    FitOptions opts;
    opts.holdout = 12;
    const auto rep = search(spec, seq, maxOrd, maxDeg, opts);
    REQUIRE(rep.found());
    return *rep.op;
}

}  // namespace

TEST_CASE("extend_exact unrolls the (2,1) operator") {
    const auto res = extend_exact(op21(), 9);
    CHECK(res.isExact);
    REQUIRE(res.exactValues.size() == 9);
    CHECK(res.exactValues[0] == std::pair<long long, Rational>{1, Rational(1, 2)});
    // 9!/(2^9·4!^2) = 315/256.
    CHECK(res.exactValues[8] == std::pair<long long, Rational>{9, Rational(315, 256)});
}

TEST_CASE("extend_exact matches the exact engine on the full overlap") {
    const auto seq = a_sequence({2, 1}, 41);
    const auto res = extend_exact(op21(), 41);
    for (const auto& [t, v] : res.exactValues)
        CHECK(v == seq[static_cast<std::size_t>(t - 1)]);

    const auto op31 = guessed({3, 1}, 90, 6, 6);
    const auto seq31 = a_sequence({3, 1}, 90);
    const auto res31 = extend_exact(op31, 90);
    for (const auto& [t, v] : res31.exactValues)
        CHECK(v == seq31[static_cast<std::size_t>(t - 1)]);
}

TEST_CASE("extend_exact echoes initial conditions without stepping") {
    const auto op31 = guessed({3, 1}, 90, 6, 6);
    const auto res = extend_exact(op31, 5);
    REQUIRE(res.exactValues.size() == 5);
    CHECK(res.exactValues[4].second == Rational(10, 9));  // A(5), straight from initials
}

TEST_CASE("constant operator stays constant forever") {
    const auto res = extend_exact(constOp(), 100);
    for (const auto& [t, v] : res.exactValues) CHECK(v == 7);

    PrecisionPolicy pol;
    const auto fres = extend_float(constOp(), 1000000, pol, {500000, 1000000});
    REQUIRE(fres.floatSamples.size() == 2);
    for (const auto& s : fres.floatSamples) CHECK(s.value == 7);  // exact in any precision
    CHECK(fres.agreementOk);
}

TEST_CASE("sampleAt retains only requested indices") {
    const auto res = extend_exact(op21(), 50, {10, 20, 30});
    REQUIRE(res.exactValues.size() == 3);
    CHECK(res.exactValues[0].first == 10);
    CHECK(res.exactValues[2].first == 30);
}

TEST_CASE("exact cap refuses runaway ranges but is overridable") {
    CHECK_THROWS_AS(extend_exact(op21(), 20000), ResourceLimitError);
    EvalOptions opts;
    opts.exactCap = 25000;
    CHECK_NOTHROW(extend_exact(op21(), 20000, {20000}, opts));
}

TEST_CASE("float path agrees with the exact path through T = 2000") {
    const auto op = op21();
    const auto exact = extend_exact(op, 2000);
    PrecisionPolicy pol;  // 256 bits, doubleCheck on
    std::vector<long long> wanted;
    for (long long t = 3; t <= 2000; t += 97) wanted.push_back(t);
    wanted.push_back(2000);
    const auto fl = extend_float(op, 2000, pol, wanted);
    REQUIRE(fl.floatSamples.size() == wanted.size());
    CHECK(fl.minAgreedDigits >= 6);
    CHECK(fl.agreementOk);
    PrecisionGuard guard(digits_for_bits(512));
    for (const auto& s : fl.floatSamples) {
        const Rational& truth = exact.exactValues[static_cast<std::size_t>(s.t - 1)].second;
        const Real err = abs(s.value - to_real(truth, digits_for_bits(512)));
        const Real scale = abs(to_real(truth, digits_for_bits(512)));
        // Spec'd contract: within 10^(2 - agreedDigits) relative.
        CHECK(err <= scale * pow(Real(10), 2 - s.agreedDigits));
        // And the doubleCheck did not overstate the agreement badly: with
        // 256-bit arithmetic on a stable operator nearly all digits survive.
        CHECK(s.agreedDigits >= 60);
    }
}

TEST_CASE("float samples approach the asymptotic constant") {
    // A(2,1;10^6)/sqrt(10^6) should sit within ~1e-4 of (2pi)^{-1/2}.
    PrecisionPolicy pol;
    const auto res = extend_float(op21(), 1000000, pol, {1000000});
    REQUIRE(res.floatSamples.size() == 1);
    PrecisionGuard guard(digits_for_bits(256));
    const Real s = res.floatSamples[0].value / 1000;
    const Real ref("0.398942280401432677939946059934381868");
    CHECK(abs(s - ref) < 1e-4);
    CHECK(res.minAgreedDigits >= 6);
}

TEST_CASE("window discipline keeps live values bounded") {
    PrecisionPolicy pol;
    pol.doubleCheck = false;
    const auto small = extend_float(op21(), 10000, pol, {9999, 10000});
    const auto large = extend_float(op21(), 100000, pol, {99999, 100000});
    CHECK(small.peakLiveValues == large.peakLiveValues);  // independent of tMax
    CHECK(large.peakLiveValues <= static_cast<std::size_t>(op21().order()) + 2 + 2);
}

TEST_CASE("doubleCheck off leaves agreement fields untouched") {
    PrecisionPolicy pol;
    pol.doubleCheck = false;
    const auto res = extend_float(op21(), 100, pol, {100});
    CHECK(res.minAgreedDigits == -1);
    CHECK(res.agreementOk);
    CHECK(res.floatSamples[0].agreedDigits == -1);
}

TEST_CASE("precision policy validation") {
    PrecisionPolicy pol;
    pol.bits = 32;  // below the documented floor
    CHECK_THROWS_AS(extend_float(op21(), 100, pol, {100}), InvalidInputError);
    CHECK_THROWS_AS(extend_float(op21(), 100, PrecisionPolicy{}, {}), InvalidInputError);
    CHECK_THROWS_AS(extend_float(op21(), 100, PrecisionPolicy{}, {101}), InvalidInputError);
}

TEST_CASE("geometric ladders") {
    CHECK(geometric_ladder(3, 4) == std::vector<long long>{3, 6, 12, 24});
    CHECK(geometric_ladder(1024, 1) == std::vector<long long>{1024});
    CHECK_THROWS_AS(geometric_ladder(0, 3), InvalidInputError);
    CHECK_THROWS_AS(geometric_ladder(5, 0), InvalidInputError);
    CHECK_THROWS_AS(geometric_ladder(1LL << 40, 30), InvalidInputError);  // overflows
}
