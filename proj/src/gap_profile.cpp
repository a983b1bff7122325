#include "maxload/gap_profile.hpp"

#include <algorithm>

#include "maxload/combinatorics.hpp"

namespace maxload {

GapProfile GapProfile::canonicalize(std::vector<std::uint32_t> values) {
    std::sort(values.begin(), values.end(), std::greater<>());
    const std::uint32_t base = values.empty() ? 0 : values.back();
    if (base != 0)
        for (auto& v : values) v -= base;
    return GapProfile{std::move(values)};
}

std::vector<std::pair<int, int>> GapProfile::blocks() const {
    std::vector<std::pair<int, int>> out;
    const int n = static_cast<int>(gaps.size());
    int i = 0;
    while (i < n) {
        int j = i + 1;
        while (j < n && gaps[j] == gaps[i]) ++j;
        out.emplace_back(i, j - i);
        i = j;
    }
    return out;
}

BigInt GapProfile::multiplicity() const {
    BigInt m = factorial(static_cast<unsigned>(gaps.size()));
    for (const auto& [start, len] : blocks()) {
        (void)start;
        if (len > 1) m /= factorial(static_cast<unsigned>(len));
    }
    return m;
}

std::uint64_t GapProfile::sum() const {
    std::uint64_t s = 0;
    for (std::uint32_t v : gaps) s += v;
    return s;
}

}  // namespace maxload
