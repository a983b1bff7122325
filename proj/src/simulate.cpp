#include "maxload/simulate.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <thread>

#include "maxload/errors.hpp"

namespace maxload {

void SimConfig::validate() const {
    spec.validate();
    if (t < 1) throw InvalidInputError("simulation needs t >= 1");
    if (samples < 1) throw InvalidInputError("simulation needs samples >= 1");
    if (threads < 1) throw InvalidInputError("simulation needs threads >= 1");
    // Histograms are dense vectors of size r*t+1 per worker.
    if (static_cast<unsigned long long>(spec.r) * static_cast<unsigned long long>(t) >
        100'000'000ull)
        throw ResourceLimitError("simulation histogram of size r*t+1 too large");
}

Xoshiro256ss replication_rng(std::uint64_t seed, long long replication) {
    const std::uint64_t stream =
        seed ^ (static_cast<std::uint64_t>(replication) * 0x9E3779B97F4A7C15ull);
    return Xoshiro256ss::from_seed(stream);
}

std::vector<int> sample_subset(Xoshiro256ss& rng, int n, int r) {
    std::vector<int> idx(static_cast<std::size_t>(n));
    std::iota(idx.begin(), idx.end(), 0);
    for (int j = 0; j < r; ++j) {
        const auto k = j + static_cast<int>(rng.bounded(static_cast<std::uint64_t>(n - j)));
        std::swap(idx[static_cast<std::size_t>(j)], idx[static_cast<std::size_t>(k)]);
    }
    idx.resize(static_cast<std::size_t>(r));
    std::sort(idx.begin(), idx.end());
    return idx;
}

namespace {

// One replication: T rounds of a partial Fisher-Yates r-subset draw.
long long replicate_once(Xoshiro256ss& rng, int n, int r, long long t,
                         std::vector<int>& occ, std::vector<int>& idx) {
    std::fill(occ.begin(), occ.end(), 0);
    for (long long round = 0; round < t; ++round) {
        std::iota(idx.begin(), idx.end(), 0);
        for (int j = 0; j < r; ++j) {
            const auto k =
                j + static_cast<int>(rng.bounded(static_cast<std::uint64_t>(n - j)));
            std::swap(idx[static_cast<std::size_t>(j)], idx[static_cast<std::size_t>(k)]);
            ++occ[static_cast<std::size_t>(idx[static_cast<std::size_t>(j)])];
        }
    }
    return *std::max_element(occ.begin(), occ.end());
}

}  // namespace

SimResult run_simulation(const SimConfig& config) {
    config.validate();
    const auto start = std::chrono::steady_clock::now();

    const int n = config.spec.n, r = config.spec.r;
    const long long t = config.t, total = config.samples;
    const std::size_t histSize = static_cast<std::size_t>(r) * static_cast<std::size_t>(t) + 1;

    const int workers = static_cast<int>(std::min<long long>(config.threads, total));
    std::vector<std::vector<std::uint64_t>> partial(
        static_cast<std::size_t>(workers), std::vector<std::uint64_t>(histSize, 0));

    auto work = [&](int w) {
        // Contiguous replication ranges; any partition gives the same merge.
        const long long lo = total * w / workers;
        const long long hi = total * (w + 1) / workers;
        std::vector<int> occ(static_cast<std::size_t>(n)), idx(static_cast<std::size_t>(n));
        auto& hist = partial[static_cast<std::size_t>(w)];
        for (long long i = lo; i < hi; ++i) {
            Xoshiro256ss rng = replication_rng(config.seed, i);
            const long long m = replicate_once(rng, n, r, t, occ, idx);
            ++hist[static_cast<std::size_t>(m)];
        }
    };

    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
        for (auto& th : pool) th.join();
    }

    SimResult res;
    res.config = config;
    std::vector<std::uint64_t> merged(histSize, 0);
    for (const auto& hist : partial)
        for (std::size_t m = 0; m < histSize; ++m) merged[m] += hist[m];
    for (std::size_t m = 0; m < histSize; ++m)
        if (merged[m] != 0) res.histogram[static_cast<long long>(m)] = merged[m];

    // Mean and standard error from the merged histogram (deterministic
    // summation order: ascending m).
    double mean = 0.0;
    for (const auto& [m, c] : res.histogram)
        mean += static_cast<double>(m) * static_cast<double>(c);
    mean /= static_cast<double>(total);
    double ss = 0.0;
    for (const auto& [m, c] : res.histogram) {
        const double d = static_cast<double>(m) - mean;
        ss += d * d * static_cast<double>(c);
    }
    res.meanMax = mean;
    if (total > 1)
        res.stdError = std::sqrt(ss / (static_cast<double>(total - 1) *
                                       static_cast<double>(total)));
    else
        res.stdError = 0.0;

    res.wallClockMs = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - start)
                          .count();
    return res;
}

}  // namespace maxload
