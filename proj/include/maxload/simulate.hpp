#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "maxload/problem.hpp"
#include "maxload/rng.hpp"

namespace maxload {

// Identifier stored in simulation output so results can be replicated.
inline constexpr const char* kRngAlgorithmId =
    "xoshiro256** seeded per replication via splitmix64(seed xor i*0x9E3779B97F4A7C15)";

struct SimConfig {
    ProblemSpec spec;
    long long t = 1;          // rounds per replication
    long long samples = 1;    // replication count
    std::uint64_t seed = 0;
    int threads = 1;

    void validate() const;
};

struct SimResult {
    SimConfig config;
    std::map<long long, std::uint64_t> histogram;  // max load -> count
    double meanMax = 0.0;
    double stdError = 0.0;
    double wallClockMs = 0.0;  // volatile; kept out of the data artifact
};

// Independent RNG stream for replication i (worker-count invariant
// by construction: streams are keyed on the replication index alone).
Xoshiro256ss replication_rng(std::uint64_t seed, long long replication);

// Uniform r-subset of {0..n-1} by partial Fisher-Yates; sorted indices.
std::vector<int> sample_subset(Xoshiro256ss& rng, int n, int r);

// Monte Carlo estimate of E[U(n,r;T)]: `samples` independent replications of
// T rounds each. The merged histogram (and hence every derived statistic) is
// identical for any thread count.
SimResult run_simulation(const SimConfig& config);

}  // namespace maxload
