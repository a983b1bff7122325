#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

#include "maxload/linalg.hpp"
#include "maxload/types.hpp"

namespace maxload {
namespace modp {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

// Fixed schedule of 62-bit primes for the modular solver; deterministic runs
// need a deterministic prime order.
extern const std::vector<u64>& prime_schedule();

inline u64 mulmod(u64 a, u64 b, u64 p) {
    return static_cast<u64>(static_cast<u128>(a) * b % p);
}

u64 powmod(u64 base, u64 exp, u64 p);
inline u64 invmod(u64 a, u64 p) { return powmod(a, p - 2, p); }  // p prime

// z mod p into [0, p).
u64 reduce_bigint(const BigInt& z, u64 p);

// (num/den) mod p; the caller must ensure den is not divisible by p
// (check with rational_reducible). Throws Error otherwise.
u64 reduce_rational(const Rational& q, u64 p);
bool rational_reducible(const Rational& q, u64 p);

using ZpMatrix = Eigen::Matrix<u64, Eigen::Dynamic, Eigen::Dynamic>;

// RREF over Z/p; same canonical form as the exact path.
RrefInfo rref_in_place(ZpMatrix& m, u64 p);

// Canonical nullspace basis (columns), mirroring linalg::nullspace_basis.
ZpMatrix nullspace_basis(ZpMatrix m, u64 p, RrefInfo* infoOut = nullptr);

}  // namespace modp

// Incremental CRT over a growing modulus.
struct CrtAccumulator {
    BigInt modulus{1};
    std::vector<BigInt> residues;  // values in [0, modulus)

    void reset(std::size_t size);
    // Fold in residues mod p (modulus must be coprime to p, trivially true
    // for distinct primes).
    void add_prime(modp::u64 p, const std::vector<modp::u64>& vals);
};

// Rational reconstruction of a mod m with |num|, den <= sqrt(m/2).
// Returns false when no admissible fraction exists (need more primes).
bool rational_reconstruct(const BigInt& a, const BigInt& m, Rational& out);

}  // namespace maxload
