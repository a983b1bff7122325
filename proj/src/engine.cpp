#include "maxload/engine.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <unordered_map>

#include "maxload/combinatorics.hpp"
#include "maxload/errors.hpp"

namespace maxload {

namespace {

// Binomials as machine words for the transition weights. C(64,32) still fits
// in 64 bits; larger n would blow the state ceiling long before one step
// finishes, so 64 is a comfortable hard cap.
constexpr int kMaxEngineN = 64;

std::uint64_t small_binomial(int a, int b) {
    static const auto table = [] {
        std::array<std::array<std::uint64_t, kMaxEngineN + 1>, kMaxEngineN + 1> t{};
        for (int i = 0; i <= kMaxEngineN; ++i) {
            t[i][0] = 1;
            for (int j = 1; j <= i; ++j)
                t[i][j] = t[i - 1][j - 1] + (j <= i - 1 ? t[i - 1][j] : 0);
        }
        return t;
    }();
    if (b < 0 || b > a) return 0;
    return table[a][b];
}

void check_engine_n(const ProblemSpec& spec) {
    spec.validate();
    if (spec.n > kMaxEngineN)
        throw InvalidInputError("engine supports n <= 64, got n=" +
                                std::to_string(spec.n));
}

}  // namespace

const BigInt* StateTable::find(const GapProfile& g) const {
    auto it = std::lower_bound(
        weights.begin(), weights.end(), g,
        [](const auto& entry, const GapProfile& key) { return entry.first < key; });
    if (it == weights.end() || !(it->first == g)) return nullptr;
    return &it->second;
}

BigInt StateTable::total_outcomes() const {
    BigInt total = 0;
    for (const auto& [g, w] : weights) total += w * g.multiplicity();
    return total;
}

StateTable initial_state(const ProblemSpec& spec) {
    check_engine_n(spec);
    StateTable t;
    t.spec = spec;
    t.round = 0;
    t.weights.emplace_back(
        GapProfile{std::vector<std::uint32_t>(static_cast<std::size_t>(spec.n), 0)},
        BigInt(1));
    return t;
}

StateTable step(const StateTable& state, const EngineOptions& opts) {
    const ProblemSpec& spec = state.spec;
    check_engine_n(spec);
    const int n = spec.n;
    const int r = spec.r;

    std::unordered_map<GapProfile, BigInt, GapProfileHash> acc;
    acc.reserve(state.weights.size() * 2 + 16);

    std::vector<std::uint32_t> next_vals(static_cast<std::size_t>(n));
    for (const auto& [profile, weight] : state.weights) {
        // Work in whole-class counts: weight times how many occupancy vectors
        // the profile stands for. Dividing back out per successor class below
        // is exact (the quotient is a multinomial).
        const BigInt class_weight = weight * profile.multiplicity();

        const auto blocks = profile.blocks();
        std::vector<int> caps(blocks.size());
        for (std::size_t b = 0; b < blocks.size(); ++b) caps[b] = blocks[b].second;

        for_each_bounded_composition(r, caps, [&](const std::vector<int>& parts) {
            // Within a block the bins are interchangeable, so "which c of the
            // s bins get a ball" contributes C(s, c) outcomes; incrementing
            // the first c positions picks the canonical representative.
            std::uint64_t coef = 1;
            for (std::size_t b = 0; b < blocks.size(); ++b)
                coef *= small_binomial(caps[b], parts[b]);

            for (int i = 0; i < n; ++i) next_vals[i] = profile.gaps[i];
            for (std::size_t b = 0; b < blocks.size(); ++b) {
                const int start = blocks[b].first;
                for (int k = 0; k < parts[b]; ++k) ++next_vals[start + k];
            }
            GapProfile succ = GapProfile::canonicalize(next_vals);
            acc[std::move(succ)] += class_weight * coef;
        });
    }

    if (acc.size() > opts.stateCeiling)
        throw ResourceLimitError(
            "state ceiling exceeded at round " + std::to_string(state.round + 1) +
            ": " + std::to_string(acc.size()) + " live states > ceiling " +
            std::to_string(opts.stateCeiling));

    StateTable out;
    out.spec = spec;
    out.round = state.round + 1;
    out.weights.reserve(acc.size());
    for (auto& [g, total] : acc) {
        BigInt q, rem;
        divide_qr(total, g.multiplicity(), q, rem);
        if (rem != 0)
            throw Error("internal: class weight not divisible by multiplicity");
        out.weights.emplace_back(g, std::move(q));
    }
    std::sort(out.weights.begin(), out.weights.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

namespace {

// Maximum occupancy of a profile's underlying vectors: top gap plus the
// common base level (rT - sum(gaps)) / n.
long long max_occupancy(const StateTable& state, const GapProfile& g) {
    const long long n = state.spec.n;
    const long long shifted = state.spec.r * state.round - static_cast<long long>(g.sum());
    if (shifted % n != 0)
        throw Error("internal: profile inconsistent with round count");
    return g.gaps.empty() ? 0 : g.gaps[0] + shifted / n;
}

}  // namespace

MaxPmf max_pmf(const StateTable& state) {
    const BigInt denom = pow_bigint(state.spec.choices_per_round(),
                                    static_cast<unsigned long long>(state.round));
    std::map<long long, BigInt> counts;
    for (const auto& [g, w] : state.weights)
        counts[max_occupancy(state, g)] += w * g.multiplicity();
    MaxPmf pmf;
    for (const auto& [m, c] : counts) pmf[m] = Rational(c, denom);
    return pmf;
}

Rational expected_max(const StateTable& state) {
    return centered_expectation(state) +
           Rational(BigInt(state.spec.r) * state.round, BigInt(state.spec.n));
}

Rational centered_expectation(const StateTable& state) {
    // A(T) = sum over profiles of P(profile class) * (gaps[0] - sum/n); the
    // base level cancels the rT/n term exactly.
    const int n = state.spec.n;
    BigInt num = 0;
    for (const auto& [g, w] : state.weights) {
        const BigInt excess = BigInt(n) * (g.gaps.empty() ? 0 : g.gaps[0]) - g.sum();
        num += w * g.multiplicity() * excess;
    }
    const BigInt denom = BigInt(n) * pow_bigint(state.spec.choices_per_round(),
                                                static_cast<unsigned long long>(state.round));
    return Rational(num, denom);
}

std::vector<Rational> a_sequence(const ProblemSpec& spec, long long tMax,
                                 const EngineOptions& opts) {
    check_engine_n(spec);
    if (tMax < 1) throw InvalidInputError("tMax must be >= 1");
    std::vector<Rational> out;
    out.reserve(static_cast<std::size_t>(tMax));
    StateTable state = initial_state(spec);
    for (long long t = 1; t <= tMax; ++t) {
        state = step(state, opts);
        out.push_back(centered_expectation(state));
    }
    return out;
}

MaxPmf max_pmf_at(const ProblemSpec& spec, long long t, const EngineOptions& opts) {
    check_engine_n(spec);
    if (t < 0) throw InvalidInputError("t must be >= 0");
    StateTable state = initial_state(spec);
    for (long long i = 0; i < t; ++i) state = step(state, opts);
    return max_pmf(state);
}

std::vector<Rational> brute_force_oracle(const ProblemSpec& spec, long long tMax) {
    spec.validate();
    if (tMax < 1) throw InvalidInputError("tMax must be >= 1");
    const BigInt choices = spec.choices_per_round();
    if (pow_bigint(choices, static_cast<unsigned long long>(tMax)) > 10'000'000)
        throw ResourceLimitError("brute force refused: C(n,r)^tMax = " +
                                 pow_bigint(choices, static_cast<unsigned long long>(tMax)).str() +
                                 " outcomes exceeds the 1e7 guard");

    const auto subsets = all_subsets(spec.n, spec.r);
    std::vector<BigInt> max_sums(static_cast<std::size_t>(tMax) + 1, BigInt(0));
    std::vector<int> occ(static_cast<std::size_t>(spec.n), 0);

    auto dfs = [&](auto&& self, long long depth) -> void {
        if (depth == tMax) return;
        for (const auto& subset : subsets) {
            for (int b : subset) ++occ[b];
            max_sums[depth + 1] += *std::max_element(occ.begin(), occ.end());
            self(self, depth + 1);
            for (int b : subset) --occ[b];
        }
    };
    dfs(dfs, 0);

    std::vector<Rational> out;
    out.reserve(static_cast<std::size_t>(tMax));
    for (long long t = 1; t <= tMax; ++t) {
        const BigInt denom = pow_bigint(choices, static_cast<unsigned long long>(t));
        const Rational mean(max_sums[static_cast<std::size_t>(t)], denom);
        out.push_back(mean - Rational(BigInt(spec.r) * t, BigInt(spec.n)));
    }
    return out;
}

}  // namespace maxload
