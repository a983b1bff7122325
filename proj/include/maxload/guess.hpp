#pragma once

#include <optional>
#include <string>
#include <vector>

#include "maxload/problem.hpp"
#include "maxload/recurrence.hpp"
#include "maxload/types.hpp"

namespace maxload {

enum class SolverKind {
    Auto,    // exact for small ansatz sizes, modular above kAutoModularThreshold
    Exact,   // rational Gauss-Jordan (the baseline)
    Modular  // per-prime solves + CRT + rational reconstruction, exact-certified
};

// Under SolverKind::Auto a fit goes modular when either the unknown count or
// the row count crosses these bounds; both solvers produce the identical
// canonical nullspace, so this is purely a performance choice.
inline constexpr int kAutoModularThreshold = 24;
inline constexpr long long kAutoModularRowThreshold = 60;

struct FitOptions {
    int holdout = 10;   // terms reserved after the fit window
    int margin = 5;     // extra terms demanded beyond the bare minimum
    int minVerified = 10;
    SolverKind solver = SolverKind::Auto;
};

struct TraceEntry {
    int order = 0;
    int degree = 0;
    std::string outcome;  // ok | insufficient-terms | empty-nullspace |
                          // holdout-failed | reconstruction-failed
    int nullity = -1;     // -1 when no nullspace was computed
    std::string detail;   // human-readable extras (e.g. required term count)
};

struct GuessReport {
    std::optional<RecurrenceOperator> op;
    long long termsUsed = 0;      // sequence terms consumed (L)
    long long termsVerified = 0;  // terms on which annihilation was re-checked
    std::vector<TraceEntry> trace;

    bool found() const { return op.has_value(); }
    // Nullity recorded at the successful ansatz (-1 if not found).
    int nullspace_dimension() const;
};

// Single-ansatz fit: solves for the nullspace of the homogeneous system
// sum_{i<=order} sum_{j<=degree} c_{i,j} T^j A(T-i) = 0 over the window
// T = order+1 .. L-holdout, then certifies candidates by exact annihilation
// of the whole window plus the holdout tail. seq holds A(1)..A(L).
GuessReport fit(const ProblemSpec& spec, const std::vector<Rational>& seq,
                int order, int degree, const FitOptions& opts = {});

// Schedule over candidate (order, degree) pairs in increasing order+degree,
// ties by increasing order; returns the first success with the full trace.
GuessReport search(const ProblemSpec& spec, const std::vector<Rational>& seq,
                   int maxOrder, int maxDegree, const FitOptions& opts = {});

}  // namespace maxload
