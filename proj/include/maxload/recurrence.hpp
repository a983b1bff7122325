#pragma once

#include <vector>

#include "maxload/polynomial.hpp"
#include "maxload/problem.hpp"
#include "maxload/types.hpp"

namespace maxload {

// The relation sum_i polys[i](T) * A(T - i) = 0, asserted for all
// T > validFrom, with initial conditions A(1)..A(validFrom) attached.
// Normalized form: polys[0] not the zero polynomial, polys[0](T) != 0 for
// all T > validFrom, gcd of all coefficients 1, leading coefficient of
// polys[0] positive, no zero polynomials at either end of `polys`.
struct RecurrenceOperator {
    ProblemSpec spec;
    std::vector<IntPolynomial> polys;
    long long validFrom = 0;
    std::vector<Rational> initial;  // A(1)..A(validFrom)

    int order() const { return static_cast<int>(polys.size()) - 1; }
    int degree() const;  // max degree over polys

    // sum_i polys[i](T) * seq[T - i], with seq holding A(1)..A(L) 0-indexed
    // as seq[0] = A(1).
    Rational apply(const std::vector<Rational>& seq, long long T) const;

    friend bool operator==(const RecurrenceOperator&, const RecurrenceOperator&) = default;
};

// Builds the canonical operator from raw nullspace coefficients:
// coeffRows[i][j] is the rational coefficient of T^j attached to A(T-i).
// Clears denominators, drops zero polynomials at both ends (re-indexing the
// shift and Taylor-shifting the survivors), removes content, fixes the sign,
// and computes validFrom = max(order, 1 + largest positive integer root of
// polys[0]). Initial conditions are left empty.
RecurrenceOperator normalize_operator(const ProblemSpec& spec,
                                      const std::vector<std::vector<Rational>>& coeffRows);

// initial = seq[0 .. validFrom-1]; throws if the sequence is too short.
void attach_initials(RecurrenceOperator& op, const std::vector<Rational>& seq);

// Structural sanity for operators read from files: normalized-form invariants
// plus initial.size() == validFrom. Throws InvalidInputError.
void validate_operator(const RecurrenceOperator& op);

// True iff the operator annihilates seq exactly for every T in [from, to].
// Requires from > order (so T - order >= 1) and to <= seq length.
bool annihilates(const RecurrenceOperator& op, const std::vector<Rational>& seq,
                 long long from, long long to);

}  // namespace maxload
