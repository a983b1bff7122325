#pragma once

#include <cstdint>
#include <vector>

#include "maxload/types.hpp"

namespace maxload {

BigInt factorial(unsigned n);
BigInt binomial(unsigned n, unsigned k);

// base^e for e >= 0.
BigInt pow_bigint(const BigInt& base, unsigned long long e);

// Calls f(parts) for every way to write `total` as an ordered sum of
// `caps.size()` non-negative parts with parts[i] <= caps[i]. Enumeration
// order is deterministic (first part descending from its cap).
template <typename F>
void for_each_bounded_composition(int total, const std::vector<int>& caps, F&& f) {
    std::vector<int> parts(caps.size(), 0);
    // Recursive lambda; depth = number of groups, always tiny (<= n).
    auto rec = [&](auto&& self, std::size_t idx, int remaining) -> void {
        if (idx + 1 == caps.size()) {
            if (remaining <= caps[idx]) {
                parts[idx] = remaining;
                f(const_cast<const std::vector<int>&>(parts));
            }
            return;
        }
        const int hi = remaining < caps[idx] ? remaining : caps[idx];
        for (int take = hi; take >= 0; --take) {
            parts[idx] = take;
            self(self, idx + 1, remaining - take);
        }
    };
    if (caps.empty()) return;
    rec(rec, 0, total);
}

// All r-subsets of {0..n-1} as sorted index vectors, in lexicographic order.
std::vector<std::vector<int>> all_subsets(int n, int r);

}  // namespace maxload
