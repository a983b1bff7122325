#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "maxload/gap_profile.hpp"
#include "maxload/problem.hpp"
#include "maxload/types.hpp"

namespace maxload {

struct EngineOptions {
    // Refuse to grow past this many live states.
    std::size_t stateCeiling = 5'000'000;
};

// Exact distribution of the occupancy pattern after `round` rounds, grouped
// by gap profile. `weight` counts outcome sequences per *representative*
// occupancy vector, so sum(weight * profile multiplicity) == C(n,r)^round
// and the implicit denominator of every probability is C(n,r)^round.
struct StateTable {
    ProblemSpec spec;
    long long round = 0;
    std::vector<std::pair<GapProfile, BigInt>> weights;  // sorted by profile

    const BigInt* find(const GapProfile& g) const;
    std::size_t live_states() const { return weights.size(); }
    // sum(weight * multiplicity); equals C(n,r)^round for a valid table.
    BigInt total_outcomes() const;
};

// Pr(U = m) by maximum occupancy m; entries sum to exactly 1.
using MaxPmf = std::map<long long, Rational>;

StateTable initial_state(const ProblemSpec& spec);

// One round: distribute r increments over the bins of each profile,
// composition-by-composition over its equal-gap blocks.
StateTable step(const StateTable& state, const EngineOptions& opts = {});

MaxPmf max_pmf(const StateTable& state);

Rational expected_max(const StateTable& state);

// A(T) = E[U] - rT/n for the table's round.
Rational centered_expectation(const StateTable& state);

// Exact A(1..tMax).
std::vector<Rational> a_sequence(const ProblemSpec& spec, long long tMax,
                                 const EngineOptions& opts = {});

// Convenience: pmf after exactly t rounds.
MaxPmf max_pmf_at(const ProblemSpec& spec, long long t,
                  const EngineOptions& opts = {});

// Independent test oracle: enumerate all C(n,r)^tMax outcome sequences.
// Refuses when that count exceeds ~1e7.
std::vector<Rational> brute_force_oracle(const ProblemSpec& spec, long long tMax);

}  // namespace maxload
