#include "maxload/modular.hpp"

#include "maxload/errors.hpp"

namespace maxload {
namespace modp {

const std::vector<u64>& prime_schedule() {
    static const std::vector<u64> primes = {
        4611686018427387847ull, 4611686018427387817ull, 4611686018427387787ull,
        4611686018427387761ull, 4611686018427387751ull, 4611686018427387737ull,
        4611686018427387733ull, 4611686018427387709ull, 4611686018427387701ull,
        4611686018427387631ull, 4611686018427387617ull, 4611686018427387587ull,
        4611686018427387461ull, 4611686018427387421ull, 4611686018427387409ull,
        4611686018427387329ull, 4611686018427387323ull, 4611686018427387301ull,
        4611686018427387271ull, 4611686018427387241ull, 4611686018427387139ull,
        4611686018427387131ull, 4611686018427387127ull, 4611686018427387113ull,
        4611686018427387091ull, 4611686018427387073ull, 4611686018427386981ull,
        4611686018427386923ull, 4611686018427386911ull, 4611686018427386903ull,
        4611686018427386897ull, 4611686018427386887ull, 4611686018427386707ull,
        4611686018427386663ull, 4611686018427386611ull, 4611686018427386551ull,
        4611686018427386471ull, 4611686018427386389ull, 4611686018427386351ull,
        4611686018427386329ull, 4611686018427386323ull, 4611686018427386309ull,
        4611686018427386287ull, 4611686018427386231ull, 4611686018427386207ull,
        4611686018427386203ull, 4611686018427386201ull, 4611686018427386081ull,
        4611686018427386023ull, 4611686018427385993ull, 4611686018427385981ull,
        4611686018427385861ull, 4611686018427385831ull, 4611686018427385801ull,
        4611686018427385763ull, 4611686018427385717ull, 4611686018427385687ull,
        4611686018427385657ull, 4611686018427385619ull, 4611686018427385553ull,
        4611686018427385537ull, 4611686018427385529ull, 4611686018427385507ull,
        4611686018427385483ull, 4611686018427385393ull, 4611686018427385363ull,
        4611686018427385321ull, 4611686018427385243ull, 4611686018427385229ull,
        4611686018427385151ull, 4611686018427385127ull, 4611686018427385111ull,
        4611686018427385043ull, 4611686018427385013ull, 4611686018427384977ull,
        4611686018427384881ull, 4611686018427384863ull, 4611686018427384683ull,
        4611686018427384653ull, 4611686018427384649ull,
    };
    return primes;
}

u64 powmod(u64 base, u64 exp, u64 p) {
    u64 acc = 1, sq = base % p;
    while (exp) {
        if (exp & 1ull) acc = mulmod(acc, sq, p);
        exp >>= 1;
        sq = mulmod(sq, sq, p);
    }
    return acc;
}

u64 reduce_bigint(const BigInt& z, u64 p) {
    BigInt m = z % p;
    if (m < 0) m += p;
    return m.convert_to<u64>();
}

bool rational_reducible(const Rational& q, u64 p) {
    return reduce_bigint(denominator(q), p) != 0;
}

u64 reduce_rational(const Rational& q, u64 p) {
    const u64 den = reduce_bigint(denominator(q), p);
    if (den == 0) throw Error("internal: denominator divisible by modulus");
    return mulmod(reduce_bigint(numerator(q), p), invmod(den, p), p);
}

RrefInfo rref_in_place(ZpMatrix& m, u64 p) {
    const Eigen::Index rows = m.rows(), cols = m.cols();
    RrefInfo info;
    Eigen::Index pr = 0;
    for (Eigen::Index col = 0; col < cols && pr < rows; ++col) {
        Eigen::Index pivot = -1;
        for (Eigen::Index i = pr; i < rows; ++i)
            if (m(i, col) != 0) {
                pivot = i;
                break;
            }
        if (pivot < 0) continue;
        if (pivot != pr) m.row(pivot).swap(m.row(pr));
        {
            const u64 inv = invmod(m(pr, col), p);
            for (Eigen::Index j = col; j < cols; ++j)
                m(pr, j) = mulmod(m(pr, j), inv, p);
        }
        for (Eigen::Index i = 0; i < rows; ++i) {
            if (i == pr) continue;
            const u64 f = m(i, col);
            if (f == 0) continue;
            for (Eigen::Index j = col; j < cols; ++j) {
                const u64 sub = mulmod(f, m(pr, j), p);
                m(i, j) = m(i, j) >= sub ? m(i, j) - sub : m(i, j) + p - sub;
            }
        }
        info.pivotCols.push_back(col);
        ++pr;
    }
    return info;
}

ZpMatrix nullspace_basis(ZpMatrix m, u64 p, RrefInfo* infoOut) {
    const RrefInfo info = rref_in_place(m, p);
    if (infoOut) *infoOut = info;
    const Eigen::Index cols = m.cols();
    std::vector<Eigen::Index> freeCols;
    {
        std::size_t k = 0;
        for (Eigen::Index c = 0; c < cols; ++c) {
            if (k < info.pivotCols.size() && info.pivotCols[k] == c)
                ++k;
            else
                freeCols.push_back(c);
        }
    }
    ZpMatrix basis(cols, static_cast<Eigen::Index>(freeCols.size()));
    basis.setZero();
    for (std::size_t v = 0; v < freeCols.size(); ++v) {
        const Eigen::Index f = freeCols[v];
        basis(f, static_cast<Eigen::Index>(v)) = 1;
        for (std::size_t k = 0; k < info.pivotCols.size(); ++k) {
            const u64 entry = m(static_cast<Eigen::Index>(k), f);
            basis(info.pivotCols[k], static_cast<Eigen::Index>(v)) =
                entry == 0 ? 0 : p - entry;
        }
    }
    return basis;
}

}  // namespace modp

void CrtAccumulator::reset(std::size_t size) {
    modulus = 1;
    residues.assign(size, BigInt(0));
}

void CrtAccumulator::add_prime(modp::u64 p, const std::vector<modp::u64>& vals) {
    if (residues.size() != vals.size())
        throw Error("internal: CRT size mismatch");
    if (modulus == 1) {
        for (std::size_t i = 0; i < vals.size(); ++i) residues[i] = vals[i];
        modulus = p;
        return;
    }
    // x = r1 + m1 * ((r2 - r1) * m1^{-1} mod p), standard two-modulus CRT.
    const modp::u64 m1modp = modp::reduce_bigint(modulus, p);
    const modp::u64 inv = modp::invmod(m1modp, p);
    const BigInt next = modulus * p;
    for (std::size_t i = 0; i < residues.size(); ++i) {
        const modp::u64 r1p = modp::reduce_bigint(residues[i], p);
        const modp::u64 diff = vals[i] >= r1p ? vals[i] - r1p : vals[i] + p - r1p;
        const modp::u64 h = modp::mulmod(diff, inv, p);
        residues[i] += modulus * h;
    }
    modulus = next;
}

bool rational_reconstruct(const BigInt& a, const BigInt& m, Rational& out) {
    const BigInt bound = sqrt(BigInt(m / 2));
    BigInt r0 = m, r1 = a % m;
    if (r1 < 0) r1 += m;
    BigInt t0 = 0, t1 = 1;
    while (r1 > bound) {
        const BigInt q = r0 / r1;
        BigInt r2 = r0 - q * r1;
        r0 = std::move(r1);
        r1 = std::move(r2);
        BigInt t2 = t0 - q * t1;
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    BigInt num = r1, den = t1;
    if (den == 0) return false;
    if (den < 0) {
        num = -num;
        den = -den;
    }
    if (den > bound) return false;
    if (gcd(abs(num), den) != 1) return false;
    out = Rational(num, den);
    return true;
}

}  // namespace maxload
