#include "maxload/combinatorics.hpp"

#include "maxload/errors.hpp"
#include "maxload/problem.hpp"

namespace maxload {

BigInt factorial(unsigned n) {
    BigInt f = 1;
    for (unsigned i = 2; i <= n; ++i) f *= i;
    return f;
}

BigInt binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt b = 1;
    for (unsigned i = 1; i <= k; ++i) {
        b *= n - k + i;
        b /= i;  // exact at every step (product of i consecutive integers)
    }
    return b;
}

BigInt pow_bigint(const BigInt& base, unsigned long long e) {
    BigInt acc = 1, sq = base;
    while (e) {
        if (e & 1ull) acc *= sq;
        e >>= 1;
        if (e) sq *= sq;
    }
    return acc;
}

std::vector<std::vector<int>> all_subsets(int n, int r) {
    std::vector<std::vector<int>> out;
    if (r < 0 || r > n) return out;  // no such subsets
    if (r == 0) {
        out.push_back({});
        return out;
    }
    std::vector<int> cur(r);
    for (int i = 0; i < r; ++i) cur[i] = i;
    for (;;) {
        out.push_back(cur);
        // next lexicographic combination
        int i = r - 1;
        while (i >= 0 && cur[i] == n - r + i) --i;
        if (i < 0) break;
        ++cur[i];
        for (int j = i + 1; j < r; ++j) cur[j] = cur[j - 1] + 1;
    }
    return out;
}

void ProblemSpec::validate() const {
    if (n < 1 || r < 1 || r > n)
        throw InvalidInputError("problem spec requires 1 <= r <= n, got n=" +
                                std::to_string(n) + " r=" + std::to_string(r));
}

BigInt ProblemSpec::choices_per_round() const {
    return binomial(static_cast<unsigned>(n), static_cast<unsigned>(r));
}

}  // namespace maxload
