#pragma once

#include "maxload/types.hpp"

namespace maxload {

// n bins, r balls per round, each round a uniform r-subset of bins gets one
// ball each. n = 1 and r = n are accepted (A is identically zero there); they
// make useful trivial fixtures.
struct ProblemSpec {
    int n = 0;
    int r = 0;

    // Throws InvalidInputError unless 1 <= r <= n.
    void validate() const;

    // C(n, r): equally likely outcomes per round.
    BigInt choices_per_round() const;

    bool degenerate() const { return r == n; }

    friend bool operator==(const ProblemSpec&, const ProblemSpec&) = default;
};

}  // namespace maxload
