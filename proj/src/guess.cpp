#include "maxload/guess.hpp"

#include <algorithm>

#include "maxload/errors.hpp"
#include "maxload/linalg.hpp"
#include "maxload/modular.hpp"

namespace maxload {

int GuessReport::nullspace_dimension() const {
    if (!found()) return -1;
    for (auto it = trace.rbegin(); it != trace.rend(); ++it)
        if (it->outcome == "ok") return it->nullity;
    return -1;
}

namespace {

struct FitShape {
    int d, e;
    long long L, fitEnd;  // fit rows are T = d+1 .. fitEnd
    int unknowns;         // (d+1)(e+1), column (i,j) at i*(e+1)+j
};

DenseMatrix<Rational> build_exact_matrix(const std::vector<Rational>& seq,
                                         const FitShape& fs) {
    const long long nrows = fs.fitEnd - fs.d;
    DenseMatrix<Rational> m(nrows, fs.unknowns);
    std::vector<BigInt> tpow(static_cast<std::size_t>(fs.e) + 1);
    for (long long T = fs.d + 1; T <= fs.fitEnd; ++T) {
        tpow[0] = 1;
        for (int j = 1; j <= fs.e; ++j) tpow[j] = tpow[j - 1] * T;
        const Eigen::Index row = T - fs.d - 1;
        for (int i = 0; i <= fs.d; ++i) {
            const Rational& a = seq[static_cast<std::size_t>(T - i - 1)];
            for (int j = 0; j <= fs.e; ++j)
                m(row, i * (fs.e + 1) + j) = Rational(tpow[j]) * a;
        }
    }
    return m;
}

std::vector<std::vector<Rational>> columns_of(const DenseMatrix<Rational>& basis) {
    std::vector<std::vector<Rational>> out(static_cast<std::size_t>(basis.cols()));
    for (Eigen::Index c = 0; c < basis.cols(); ++c) {
        out[static_cast<std::size_t>(c)].resize(static_cast<std::size_t>(basis.rows()));
        for (Eigen::Index r = 0; r < basis.rows(); ++r)
            out[static_cast<std::size_t>(c)][static_cast<std::size_t>(r)] = basis(r, c);
    }
    return out;
}

std::vector<std::vector<Rational>> solve_exact(const std::vector<Rational>& seq,
                                               const FitShape& fs) {
    DenseMatrix<Rational> m = build_exact_matrix(seq, fs);
    return columns_of(nullspace_basis(std::move(m)));
}

// Is v exactly in the nullspace of the fit matrix? Used to certify modular
// reconstructions against the exact system.
bool in_exact_nullspace(const std::vector<Rational>& seq, const FitShape& fs,
                        const std::vector<std::vector<Rational>>& vecs) {
    const DenseMatrix<Rational> m = build_exact_matrix(seq, fs);
    for (const auto& v : vecs) {
        for (Eigen::Index row = 0; row < m.rows(); ++row) {
            Rational acc = 0;
            for (Eigen::Index col = 0; col < m.cols(); ++col) {
                if (v[static_cast<std::size_t>(col)] == 0) continue;
                acc += m(row, col) * v[static_cast<std::size_t>(col)];
            }
            if (acc != 0) return false;
        }
    }
    return true;
}

struct ModStructure {
    std::vector<Eigen::Index> pivotCols;
    Eigen::Index nullity = 0;
    bool operator==(const ModStructure&) const = default;
};

// Modular accelerator: identical canonical nullspace, reconstructed via CRT
// from per-prime solves, then certified against the exact matrix. Unlucky
// primes show up as rank deficits (mod-p rank can only drop), so the running
// structure of maximal rank wins and lower-rank primes are discarded.
std::optional<std::vector<std::vector<Rational>>> solve_modular(
    const std::vector<Rational>& seq, const FitShape& fs, std::string& failDetail) {
    const auto& primes = modp::prime_schedule();
    ModStructure best;
    bool haveBest = false;
    CrtAccumulator crt;
    std::size_t vecLen = 0, primesUsed = 0;

    std::vector<modp::u64> flat;
    std::vector<modp::u64> apow(static_cast<std::size_t>(fs.e) + 1);

    for (std::size_t pi = 0; pi < primes.size(); ++pi) {
        const modp::u64 p = primes[pi];
        bool reducible = true;
        std::vector<modp::u64> ares(static_cast<std::size_t>(fs.L));
        for (long long t = 0; t < fs.L && reducible; ++t) {
            if (!modp::rational_reducible(seq[static_cast<std::size_t>(t)], p))
                reducible = false;
            else
                ares[static_cast<std::size_t>(t)] =
                    modp::reduce_rational(seq[static_cast<std::size_t>(t)], p);
        }
        if (!reducible) continue;  // denominator hit; skip this prime

        const long long nrows = fs.fitEnd - fs.d;
        modp::ZpMatrix m(nrows, fs.unknowns);
        for (long long T = fs.d + 1; T <= fs.fitEnd; ++T) {
            apow[0] = 1;
            const modp::u64 tmod = static_cast<modp::u64>(T) % p;
            for (int j = 1; j <= fs.e; ++j) apow[j] = modp::mulmod(apow[j - 1], tmod, p);
            const Eigen::Index row = T - fs.d - 1;
            for (int i = 0; i <= fs.d; ++i) {
                const modp::u64 a = ares[static_cast<std::size_t>(T - i - 1)];
                for (int j = 0; j <= fs.e; ++j)
                    m(row, i * (fs.e + 1) + j) = modp::mulmod(apow[j], a, p);
            }
        }

        RrefInfo info;
        modp::ZpMatrix basis = modp::nullspace_basis(std::move(m), p, &info);
        ModStructure st{info.pivotCols, basis.cols()};

        if (!haveBest || st.pivotCols.size() > best.pivotCols.size()) {
            // New maximal rank: restart accumulation under this structure.
            best = st;
            haveBest = true;
            vecLen = static_cast<std::size_t>(basis.rows() * basis.cols());
            crt.reset(vecLen);
            primesUsed = 0;
        } else if (!(st == best)) {
            continue;  // rank-deficient (unlucky) prime, drop it
        }

        flat.resize(vecLen);
        std::size_t k = 0;
        for (Eigen::Index c = 0; c < basis.cols(); ++c)
            for (Eigen::Index r = 0; r < basis.rows(); ++r) flat[k++] = basis(r, c);
        crt.add_prime(p, flat);
        ++primesUsed;

        if (best.nullity == 0) return std::vector<std::vector<Rational>>{};

        // Attempt reconstruction on a doubling schedule (and once more on the
        // final prime, in case the budget is not a power of two).
        const bool lastPrime = pi + 1 == primes.size();
        if (primesUsed >= 2 &&
            ((primesUsed & (primesUsed - 1)) == 0 || lastPrime)) {
            std::vector<std::vector<Rational>> vecs(
                static_cast<std::size_t>(best.nullity),
                std::vector<Rational>(static_cast<std::size_t>(fs.unknowns)));
            bool ok = true;
            for (std::size_t idx = 0; idx < vecLen && ok; ++idx) {
                Rational q;
                if (!rational_reconstruct(crt.residues[idx], crt.modulus, q))
                    ok = false;
                else
                    vecs[idx / static_cast<std::size_t>(fs.unknowns)]
                        [idx % static_cast<std::size_t>(fs.unknowns)] = q;
            }
            if (ok && in_exact_nullspace(seq, fs, vecs)) return vecs;
        }
    }
    failDetail = "CRT reconstruction did not converge within " +
                 std::to_string(primes.size()) + " primes";
    return std::nullopt;
}

// Flattened |coefficient| sequence for the deterministic tie-break.
std::vector<BigInt> abs_coefficient_key(const RecurrenceOperator& op) {
    std::vector<BigInt> key;
    for (const auto& p : op.polys)
        for (const auto& c : p.coeffs) key.push_back(abs(c));
    return key;
}

bool candidate_less(const RecurrenceOperator& a, const RecurrenceOperator& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    const auto ka = abs_coefficient_key(a), kb = abs_coefficient_key(b);
    if (ka != kb) return ka < kb;
    return false;
}

}  // namespace

GuessReport fit(const ProblemSpec& spec, const std::vector<Rational>& seq,
                int order, int degree, const FitOptions& opts) {
    spec.validate();
    if (order < 1 || degree < 0)
        throw InvalidInputError("fit requires order >= 1 and degree >= 0");
    if (opts.holdout < 1 || opts.margin < 0)
        throw InvalidInputError("fit requires holdout >= 1 and margin >= 0");

    GuessReport report;
    report.termsUsed = static_cast<long long>(seq.size());

    FitShape fs;
    fs.d = order;
    fs.e = degree;
    fs.L = static_cast<long long>(seq.size());
    fs.fitEnd = fs.L - opts.holdout;
    fs.unknowns = (order + 1) * (degree + 1);

    const long long need = static_cast<long long>(fs.unknowns) + order +
                           opts.holdout + opts.margin;
    if (fs.L < need) {
        report.trace.push_back({order, degree, "insufficient-terms", -1,
                                "need " + std::to_string(need) + " terms, have " +
                                    std::to_string(fs.L)});
        return report;
    }

    SolverKind solver = opts.solver;
    if (solver == SolverKind::Auto)
        solver = (fs.unknowns > kAutoModularThreshold ||
                  fs.fitEnd - fs.d > kAutoModularRowThreshold)
                     ? SolverKind::Modular
                     : SolverKind::Exact;

    std::vector<std::vector<Rational>> basis;
    if (solver == SolverKind::Exact) {
        basis = solve_exact(seq, fs);
    } else {
        std::string failDetail;
        auto solved = solve_modular(seq, fs, failDetail);
        if (!solved) {
            report.trace.push_back({order, degree, "reconstruction-failed", -1, failDetail});
            return report;
        }
        basis = std::move(*solved);
    }

    const int nullity = static_cast<int>(basis.size());
    if (nullity == 0) {
        report.trace.push_back({order, degree, "empty-nullspace", 0, ""});
        return report;
    }

    // Normalize every basis vector, certify by annihilation over the window
    // plus holdout, keep the verified ones.
    struct Candidate {
        RecurrenceOperator op;
        long long verified;
    };
    std::vector<Candidate> good;
    for (const auto& vec : basis) {
        std::vector<std::vector<Rational>> coeffRows(static_cast<std::size_t>(order) + 1);
        for (int i = 0; i <= order; ++i)
            coeffRows[static_cast<std::size_t>(i)]
                .assign(vec.begin() + i * (degree + 1),
                        vec.begin() + (i + 1) * (degree + 1));
        RecurrenceOperator op = normalize_operator(spec, coeffRows);

        const long long verifyStart =
            std::max<long long>(op.order(), op.validFrom) + 1;
        if (verifyStart > fs.L) continue;
        const long long verified = fs.L - verifyStart + 1;
        if (verified < opts.minVerified) continue;
        if (!annihilates(op, seq, verifyStart, fs.L)) continue;
        good.push_back({std::move(op), verified});
    }

    if (good.empty()) {
        report.trace.push_back({order, degree, "holdout-failed", nullity,
                                "no basis vector survived exact verification"});
        return report;
    }

    auto best = std::min_element(good.begin(), good.end(),
                                 [](const Candidate& a, const Candidate& b) {
                                     return candidate_less(a.op, b.op);
                                 });
    attach_initials(best->op, seq);
    report.op = std::move(best->op);
    report.termsVerified = best->verified;
    report.trace.push_back({order, degree, "ok", nullity, ""});
    return report;
}

GuessReport search(const ProblemSpec& spec, const std::vector<Rational>& seq,
                   int maxOrder, int maxDegree, const FitOptions& opts) {
    if (maxOrder < 1 || maxDegree < 0)
        throw InvalidInputError("search requires maxOrder >= 1 and maxDegree >= 0");
    GuessReport report;
    report.termsUsed = static_cast<long long>(seq.size());
    for (int s = 1; s <= maxOrder + maxDegree; ++s) {
        for (int d = std::max(1, s - maxDegree); d <= std::min(maxOrder, s); ++d) {
            const int e = s - d;
            GuessReport sub = fit(spec, seq, d, e, opts);
            report.trace.insert(report.trace.end(), sub.trace.begin(), sub.trace.end());
            if (sub.found()) {
                report.op = std::move(sub.op);
                report.termsVerified = sub.termsVerified;
                return report;
            }
        }
    }
    return report;
}

}  // namespace maxload
