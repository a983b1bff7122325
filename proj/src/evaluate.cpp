#include "maxload/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "maxload/errors.hpp"

namespace maxload {

namespace {

std::vector<long long> prepare_samples(std::vector<long long> sampleAt, long long tMax) {
    std::sort(sampleAt.begin(), sampleAt.end());
    sampleAt.erase(std::unique(sampleAt.begin(), sampleAt.end()), sampleAt.end());
    for (long long t : sampleAt)
        if (t < 1 || t > tMax)
            throw InvalidInputError("sample index " + std::to_string(t) +
                                    " outside [1, " + std::to_string(tMax) + "]");
    return sampleAt;
}

void check_operator_for_eval(const RecurrenceOperator& op) {
    if (op.polys.empty() || op.polys.front().is_zero())
        throw InvalidInputError("operator has no usable leading polynomial");
    if (static_cast<long long>(op.initial.size()) < op.validFrom)
        throw InvalidInputError("operator carries " + std::to_string(op.initial.size()) +
                                " initial conditions but needs " +
                                std::to_string(op.validFrom));
}

}  // namespace

EvaluationResult extend_exact(const RecurrenceOperator& op, long long tMax,
                              const std::vector<long long>& sampleAt,
                              const EvalOptions& opts) {
    check_operator_for_eval(op);
    if (tMax < 1) throw InvalidInputError("tMax must be >= 1");
    if (tMax > opts.exactCap)
        throw ResourceLimitError("exact extension refused above tMax = " +
                                 std::to_string(opts.exactCap) +
                                 " (raise the cap or use the float path)");

    const auto wanted = prepare_samples(sampleAt, tMax);
    const bool keepAll = wanted.empty();
    std::size_t nextWanted = 0;

    EvaluationResult res;
    res.isExact = true;

    const int d = op.order();
    std::vector<Rational> window(static_cast<std::size_t>(std::max(d, 1)));
    auto winAt = [&](long long t) -> Rational& {
        return window[static_cast<std::size_t>(t % std::max(d, 1))];
    };

    auto emit = [&](long long t, const Rational& v) {
        if (keepAll) {
            res.exactValues.emplace_back(t, v);
        } else {
            while (nextWanted < wanted.size() && wanted[nextWanted] == t) {
                res.exactValues.emplace_back(t, v);
                ++nextWanted;
            }
        }
        res.peakLiveValues = std::max(res.peakLiveValues,
                                      res.exactValues.size() + window.size());
    };

    const long long seedEnd = std::min<long long>(op.validFrom, tMax);
    for (long long t = 1; t <= seedEnd; ++t) {
        const Rational& v = op.initial[static_cast<std::size_t>(t - 1)];
        if (d > 0) winAt(t) = v;
        emit(t, v);
    }
    for (long long T = op.validFrom + 1; T <= tMax; ++T) {
        Rational value = 0;
        if (d > 0) {
            const BigInt x(T);
            const BigInt p0 = op.polys[0].eval(x);
            if (p0 == 0)
                throw InvalidInputError("p0 vanishes at T = " + std::to_string(T));
            Rational acc = 0;
            for (int i = 1; i <= d; ++i) {
                if (op.polys[static_cast<std::size_t>(i)].is_zero()) continue;
                acc += Rational(op.polys[static_cast<std::size_t>(i)].eval(x)) * winAt(T - i);
            }
            value = -acc / Rational(p0);
            winAt(T) = value;
        }
        emit(T, value);
    }
    return res;
}

namespace {

// Exact integer wrapped in a Real whose mantissa just covers it, so the
// full-precision multiply/divide against it costs O(working size), not
// O(working size^2). to_real is exact once the mantissa covers bit_length.
Real small_exact(const BigInt& v) {
    const unsigned bits = std::max<unsigned>(64, static_cast<unsigned>(bit_length(v)) + 8);
    return to_real(v, digits_for_bits(bits));
}

// One float pass with every value carried at an explicit precision. The
// global default precision is deliberately never touched: it is not
// thread-local in this build, and doubleCheck runs two passes concurrently.
// All arithmetic is in-place (compound ops keep the target's precision).
std::vector<Real> float_pass(const RecurrenceOperator& op, long long tMax,
                             unsigned digits, const std::vector<long long>& wanted,
                             std::size_t* peakLive) {
    const int d = op.order();

    std::vector<Real> window(static_cast<std::size_t>(std::max(d, 1)),
                             Real(0, digits));
    auto winAt = [&](long long t) -> Real& {
        return window[static_cast<std::size_t>(t % std::max(d, 1))];
    };

    std::vector<Real> out;
    out.reserve(wanted.size());
    std::size_t nextWanted = 0;
    auto emit = [&](long long t, const Real& v) {
        while (nextWanted < wanted.size() && wanted[nextWanted] == t) {
            out.push_back(v);
            ++nextWanted;
        }
        if (peakLive)
            *peakLive = std::max(*peakLive, out.size() + window.size());
    };

    const long long seedEnd = std::min<long long>(op.validFrom, tMax);
    for (long long t = 1; t <= seedEnd; ++t) {
        const Real v = to_real(op.initial[static_cast<std::size_t>(t - 1)], digits);
        if (d > 0) winAt(t) = v;
        emit(t, v);
    }
    Real acc(0, digits);
    Real term(0, digits);
    for (long long T = op.validFrom + 1; T <= tMax; ++T) {
        if (d > 0) {
            // Polynomial values are computed exactly in integers (they are a
            // few hundred bits) and enter the float arithmetic as exact
            // small-mantissa factors.
            const BigInt p0 = op.polys[0].eval(T);
            if (p0 == 0)
                throw InvalidInputError("p0 vanishes at T = " + std::to_string(T));
            acc = Real(0, digits);
            for (int i = 1; i <= d; ++i) {
                const auto& poly = op.polys[static_cast<std::size_t>(i)];
                if (poly.is_zero()) continue;
                const BigInt ci = poly.eval(T);
                if (ci == 0) continue;
                term = winAt(T - i);
                term *= small_exact(ci);
                acc += term;
            }
            acc /= small_exact(-p0);  // A(T) = sum / (-p0)
            winAt(T) = acc;
            emit(T, acc);
        } else {
            emit(T, Real(0, digits));
        }
    }
    return out;
}

}  // namespace

EvaluationResult extend_float(const RecurrenceOperator& op, long long tMax,
                              const PrecisionPolicy& policy,
                              const std::vector<long long>& sampleAt) {
    check_operator_for_eval(op);
    if (tMax < 1) throw InvalidInputError("tMax must be >= 1");
    if (policy.bits < 64) throw InvalidInputError("precision must be >= 64 bits");
    const auto wanted = prepare_samples(sampleAt, tMax);
    if (wanted.empty())
        throw InvalidInputError("float extension needs at least one sample index");

    EvaluationResult res;
    res.isExact = false;
    res.precisionBits = policy.bits;

    const unsigned digits = digits_for_bits(policy.bits);
    std::vector<Real> base, check;
    if (policy.doubleCheck) {
        // The two passes are independent evaluations; run them concurrently.
        const unsigned digits2 = digits_for_bits(policy.bits * 2);
        std::exception_ptr checkError;
        std::thread checker([&] {
            try {
                check = float_pass(op, tMax, digits2, wanted, nullptr);
            } catch (...) {
                checkError = std::current_exception();
            }
        });
        try {
            base = float_pass(op, tMax, digits, wanted, &res.peakLiveValues);
        } catch (...) {
            checker.join();
            throw;
        }
        checker.join();
        if (checkError) std::rethrow_exception(checkError);
    } else {
        base = float_pass(op, tMax, digits, wanted, &res.peakLiveValues);
    }

    res.floatSamples.resize(wanted.size());
    for (std::size_t i = 0; i < wanted.size(); ++i) {
        res.floatSamples[i].t = wanted[i];
        res.floatSamples[i].value = base[i];
    }

    if (policy.doubleCheck) {
        const unsigned digits2 = digits_for_bits(policy.bits * 2);
        PrecisionGuard guard(digits2);
        int minDigits = std::numeric_limits<int>::max();
        for (std::size_t i = 0; i < wanted.size(); ++i) {
            const Real diff = abs(Real(base[i]) - check[i]);
            int agreed;
            if (diff == 0) {
                agreed = static_cast<int>(digits);
            } else {
                const Real scaleA = abs(Real(base[i]));
                const Real scaleB = abs(check[i]);
                const Real scale = scaleA > scaleB ? scaleA : scaleB;
                const Real rel = diff / scale;
                const double mag = -log10(rel).convert_to<double>();
                agreed = std::max(0, static_cast<int>(std::floor(mag)));
                agreed = std::min(agreed, static_cast<int>(digits));
            }
            res.floatSamples[i].agreedDigits = agreed;
            minDigits = std::min(minDigits, agreed);
        }
        res.minAgreedDigits = wanted.empty() ? -1 : minDigits;
        res.agreementOk = res.minAgreedDigits >= 6;
    }
    return res;
}

std::vector<long long> geometric_ladder(long long t0, int count) {
    if (t0 < 1 || count < 1)
        throw InvalidInputError("ladder needs t0 >= 1 and count >= 1");
    std::vector<long long> out;
    out.reserve(static_cast<std::size_t>(count));
    long long t = t0;
    for (int k = 0; k < count; ++k) {
        out.push_back(t);
        if (k + 1 < count) {
            if (t > std::numeric_limits<long long>::max() / 2)
                throw InvalidInputError("ladder overflows 64-bit range");
            t *= 2;
        }
    }
    return out;
}

}  // namespace maxload
