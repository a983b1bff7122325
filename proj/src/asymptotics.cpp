#include "maxload/asymptotics.hpp"

#include "maxload/closed_form.hpp"
#include "maxload/errors.hpp"

namespace maxload {

AsymptoticFit estimate_constant(const std::vector<FloatSample>& samples, int depth) {
    if (depth < 0) throw InvalidInputError("extrapolation depth must be >= 0");
    if (static_cast<int>(samples.size()) < depth + 1)
        throw InvalidInputError("need at least depth+1 = " + std::to_string(depth + 1) +
                                " ladder samples, have " + std::to_string(samples.size()));
    for (std::size_t k = 0; k + 1 < samples.size(); ++k) {
        if (samples[k].t < 1 || samples[k + 1].t != 2 * samples[k].t)
            throw InvalidInputError("samples must sit on a geometric ladder T_k = T0*2^k");
    }

    // Work at the precision the samples carry.
    const unsigned digits = samples.front().value.precision();
    PrecisionGuard guard(digits);

    AsymptoticFit fit;
    fit.extrapolationDepth = depth;
    std::vector<Real> column;
    column.reserve(samples.size());
    for (const auto& s : samples) {
        Real v = Real(s.value) / sqrt(Real(s.t));
        fit.samples.emplace_back(s.t, v);
        column.push_back(std::move(v));
    }

    // Column j eliminates the 1/T^j term; with a ratio-2 ladder the update is
    // R[k][j] = (2^j R[k][j-1] - R[k-1][j-1]) / (2^j - 1). The running
    // `diagonal` holds R[K][0..j].
    std::vector<Real> diagonal{column.back()};
    for (int j = 1; j <= depth; ++j) {
        const Real w = pow(Real(2), j);
        std::vector<Real> next;
        next.reserve(column.size() - 1);
        for (std::size_t k = 1; k < column.size(); ++k)
            next.push_back((w * column[k] - column[k - 1]) / (w - 1));
        column = std::move(next);
        diagonal.push_back(column.back());
    }

    fit.cEstimate = diagonal.back();
    if (depth >= 1)
        fit.errorBar = abs(diagonal[diagonal.size() - 1] - diagonal[diagonal.size() - 2]);
    else if (fit.samples.size() >= 2)
        fit.errorBar = abs(fit.samples.back().second -
                           fit.samples[fit.samples.size() - 2].second);
    else
        fit.errorBar = 0;
    return fit;
}

ComparisonReport compare_report(const ProblemSpec& spec, const AsymptoticFit& fit) {
    spec.validate();
    const unsigned digits = fit.cEstimate.precision();
    PrecisionGuard guard(digits);

    ComparisonReport rep;
    rep.spec = spec;
    rep.cMeasured = fit.cEstimate;
    rep.errorBar = fit.errorBar;
    rep.cHeuristic = heuristic_constant_real(spec, digits);
    rep.gapHeuristicAbs = abs(rep.cHeuristic - rep.cMeasured);
    if (rep.cMeasured != 0)
        rep.gapHeuristicRel = rep.gapHeuristicAbs / abs(rep.cMeasured);
    else
        rep.gapHeuristicRel = 0;
    if (spec.n == 2 && spec.r == 1) {
        const Real pi = 4 * atan(Real(1));
        rep.cExact = Real(1) / sqrt(2 * pi);
        rep.gapExactAbs = abs(*rep.cExact - rep.cMeasured);
    }
    return rep;
}

}  // namespace maxload
