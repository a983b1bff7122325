#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "maxload/types.hpp"

namespace maxload {

// Canonical representative of an occupancy vector under bin symmetry:
// occupancies sorted non-increasing, then rebased so the minimum is 0.
// The absolute level is recoverable from the round count: with S = sum of
// gaps, every underlying occupancy is gaps[i] + (r*T - S)/n.
struct GapProfile {
    std::vector<std::uint32_t> gaps;  // size n, non-increasing, gaps.back() == 0

    // Sorts descending and rebases; accepts any occupancy-like vector.
    static GapProfile canonicalize(std::vector<std::uint32_t> values);

    // Maximal runs of equal gap values as (start index, length) pairs.
    std::vector<std::pair<int, int>> blocks() const;

    // Number of distinct occupancy vectors this profile represents:
    // n! / prod(block length)!.
    BigInt multiplicity() const;

    std::uint64_t sum() const;

    friend bool operator==(const GapProfile&, const GapProfile&) = default;
    friend auto operator<=>(const GapProfile& a, const GapProfile& b) {
        return a.gaps <=> b.gaps;
    }
};

struct GapProfileHash {
    std::size_t operator()(const GapProfile& g) const noexcept {
        // FNV-1a over the raw gap words.
        std::uint64_t h = 1469598103934665603ull;
        for (std::uint32_t v : g.gaps) {
            h ^= v;
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
};

}  // namespace maxload
