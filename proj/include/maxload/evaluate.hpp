#pragma once

#include <utility>
#include <vector>

#include "maxload/recurrence.hpp"
#include "maxload/types.hpp"

namespace maxload {

struct PrecisionPolicy {
    unsigned bits = 256;      // working mantissa precision, >= 64
    bool doubleCheck = true;  // re-run at 2x bits and compare digits
};

struct EvalOptions {
    // Exact forward-solving refused above this tMax (flag-overridable); the
    // float path is the scalability story.
    long long exactCap = 10'000;
};

struct FloatSample {
    long long t = 0;
    Real value;
    int agreedDigits = -1;  // leading decimal digits agreeing across the
                            // two precisions; -1 without doubleCheck
};

struct EvaluationResult {
    bool isExact = true;
    std::vector<std::pair<long long, Rational>> exactValues;  // sorted by T
    std::vector<FloatSample> floatSamples;                    // sorted by T
    unsigned precisionBits = 0;
    int minAgreedDigits = -1;
    bool agreementOk = true;  // false on catastrophic loss (< 6 digits)
    // Instrumentation for the window-discipline contract: the largest number
    // of sequence values held simultaneously (rolling window + retained
    // output), which must stay O(order + |sampleAt|) whatever tMax is.
    std::size_t peakLiveValues = 0;
};

// Forward-solve A(T) = -(sum_{i>=1} p_i(T) A(T-i)) / p0(T) in exact
// rationals. Retains every value when sampleAt is empty, otherwise just the
// requested indices.
EvaluationResult extend_exact(const RecurrenceOperator& op, long long tMax,
                              const std::vector<long long>& sampleAt = {},
                              const EvalOptions& opts = {});

// Same recursion in mpfr arithmetic at the policy precision, retaining only
// the sampled indices plus a rolling window of `order` values.
EvaluationResult extend_float(const RecurrenceOperator& op, long long tMax,
                              const PrecisionPolicy& policy,
                              const std::vector<long long>& sampleAt);

// t0 * 2^k for k = 0..count-1; throws on overflow or bad arguments.
std::vector<long long> geometric_ladder(long long t0, int count);

}  // namespace maxload
