#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "maxload/evaluate.hpp"
#include "maxload/problem.hpp"
#include "maxload/types.hpp"

namespace maxload {

// Estimate of C in A(T) = C sqrt(T) + O(1/sqrt(T)), from a geometric ladder.
struct AsymptoticFit {
    Real cEstimate;
    Real errorBar;  // |last two diagonal entries| of the extrapolation table
    std::vector<std::pair<long long, Real>> samples;  // (T_k, A(T_k)/sqrt(T_k))
    int extrapolationDepth = 0;
};

// samples carry A(T_k) on a strict ratio-2 ladder T_k = T0 * 2^k. Forms
// s_k = A(T_k)/sqrt(T_k) and Richardson-extrapolates in 1/T to `depth`
// (eliminating 1/T, then 1/T^2, ...). Needs at least depth+1 samples and
// rejects non-geometric ladders.
AsymptoticFit estimate_constant(const std::vector<FloatSample>& samples, int depth);

struct ComparisonReport {
    ProblemSpec spec;
    Real cMeasured;
    Real errorBar;
    Real cHeuristic;
    Real gapHeuristicAbs;
    Real gapHeuristicRel;          // relative to |cMeasured| (0 when measured is 0)
    std::optional<Real> cExact;    // (2pi)^{-1/2} for (n,r) = (2,1)
    std::optional<Real> gapExactAbs;
};

ComparisonReport compare_report(const ProblemSpec& spec, const AsymptoticFit& fit);

}  // namespace maxload
