#include "maxload/recurrence.hpp"

#include <algorithm>

#include "maxload/errors.hpp"

namespace maxload {

int RecurrenceOperator::degree() const {
    int d = 0;
    for (const auto& p : polys) d = std::max(d, p.degree());
    return d;
}

Rational RecurrenceOperator::apply(const std::vector<Rational>& seq, long long T) const {
    const int d = order();
    if (T - d < 1 || T > static_cast<long long>(seq.size()))
        throw InvalidInputError("operator application at T=" + std::to_string(T) +
                                " needs A(" + std::to_string(T - d) + ".." +
                                std::to_string(T) + ") but sequence has " +
                                std::to_string(seq.size()) + " terms");
    const BigInt x(T);
    Rational acc = 0;
    for (int i = 0; i <= d; ++i) {
        if (polys[i].is_zero()) continue;
        acc += Rational(polys[i].eval(x)) * seq[static_cast<std::size_t>(T - i - 1)];
    }
    return acc;
}

RecurrenceOperator normalize_operator(const ProblemSpec& spec,
                                      const std::vector<std::vector<Rational>>& coeffRows) {
    // Common denominator across every coefficient.
    BigInt common = 1;
    for (const auto& row : coeffRows)
        for (const auto& q : row) common = lcm(common, denominator(q));

    std::vector<IntPolynomial> polys;
    polys.reserve(coeffRows.size());
    for (const auto& row : coeffRows) {
        std::vector<BigInt> c;
        c.reserve(row.size());
        for (const auto& q : row)
            c.push_back(numerator(q) * (common / denominator(q)));
        polys.emplace_back(std::move(c));
    }

    // Drop zero polynomials at both ends; an inner zero poly is fine.
    std::size_t lo = 0, hi = polys.size();
    while (lo < hi && polys[lo].is_zero()) ++lo;
    while (hi > lo && polys[hi - 1].is_zero()) --hi;
    if (lo == hi) throw Error("internal: zero operator cannot be normalized");

    RecurrenceOperator op;
    op.spec = spec;
    op.polys.reserve(hi - lo);
    if (lo == 0) {
        op.polys.assign(polys.begin(), polys.begin() + static_cast<std::ptrdiff_t>(hi));
    } else {
        // Leading shifts were zero: substitute S = T - lo so the top term is
        // A(S) again; polynomials pick up a Taylor shift by +lo.
        for (std::size_t i = lo; i < hi; ++i)
            op.polys.push_back(polys[i].shifted(static_cast<long long>(lo)));
    }

    BigInt content = 0;
    for (const auto& p : op.polys) {
        content = gcd(content, p.content());
        if (content == 1) break;
    }
    if (content > 1)
        for (auto& p : op.polys) p.divide_exact(content);

    if (op.polys.front().coeffs.back() < 0)
        for (auto& p : op.polys) p.negate();

    op.validFrom = std::max<long long>(op.order(),
                                       1 + largest_positive_integer_root(op.polys.front()));
    return op;
}

void attach_initials(RecurrenceOperator& op, const std::vector<Rational>& seq) {
    if (static_cast<long long>(seq.size()) < op.validFrom)
        throw InvalidInputError("need " + std::to_string(op.validFrom) +
                                " initial terms, sequence has " +
                                std::to_string(seq.size()));
    op.initial.assign(seq.begin(), seq.begin() + static_cast<std::ptrdiff_t>(op.validFrom));
}

void validate_operator(const RecurrenceOperator& op) {
    op.spec.validate();
    if (op.polys.empty()) throw InvalidInputError("operator has no polynomials");
    if (op.polys.front().is_zero())
        throw InvalidInputError("operator's leading polynomial p0 is zero");
    if (op.polys.size() > 1 && op.polys.back().is_zero())
        throw InvalidInputError("operator's trailing polynomial is zero (order overstated)");
    BigInt content = 0;
    for (const auto& p : op.polys) content = gcd(content, p.content());
    if (content != 1)
        throw InvalidInputError("operator content not reduced (gcd " + content.str() + ")");
    if (op.polys.front().coeffs.back() < 0)
        throw InvalidInputError("operator sign not normalized (p0 leading coefficient < 0)");
    if (op.validFrom < op.order())
        throw InvalidInputError("validFrom below operator order");
    const long long root = largest_positive_integer_root(op.polys.front());
    if (root > op.validFrom)
        throw InvalidInputError("p0 vanishes at T=" + std::to_string(root) +
                                " > validFrom " + std::to_string(op.validFrom));
    if (static_cast<long long>(op.initial.size()) != op.validFrom)
        throw InvalidInputError("operator carries " + std::to_string(op.initial.size()) +
                                " initial terms, expected validFrom = " +
                                std::to_string(op.validFrom));
}

bool annihilates(const RecurrenceOperator& op, const std::vector<Rational>& seq,
                 long long from, long long to) {
    if (from - op.order() < 1 || to > static_cast<long long>(seq.size()) || from > to)
        throw InvalidInputError("annihilation range [" + std::to_string(from) + "," +
                                std::to_string(to) + "] unsatisfiable for sequence of " +
                                std::to_string(seq.size()) + " terms and order " +
                                std::to_string(op.order()));
    for (long long T = from; T <= to; ++T)
        if (op.apply(seq, T) != 0) return false;
    return true;
}

}  // namespace maxload
