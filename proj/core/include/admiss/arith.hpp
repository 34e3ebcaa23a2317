#pragma once

// Arbitrary-precision number theory used by the constructions: primality,
// modular exponentiation, multiplicative orders, primitive roots, prime
// enumeration, CRT and small-factor search.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace admiss {

/// Non-negative arbitrary-precision integer. Signed intermediates (x + n with
/// a negative offset) use the same type.
using Nat = mpz_class;

inline constexpr unsigned kDefaultMillerRabinRounds = 64;

/// Largest number of bits we are willing to materialize for a single value
/// (thresholds, powers). Beyond this, comparisons must be symbolic.
inline constexpr std::size_t kMaxMaterializeBits = std::size_t{1} << 26;

/// How primality was decided. Below 2^64 a fixed base battery makes
/// Miller-Rabin exact; above it `rounds` random bases are used.
struct PrimalityMode {
    unsigned rounds = kDefaultMillerRabinRounds;

    std::string describe() const;
};

/// True when is_prime(n) is exact (n < 2^64).
bool primality_is_exact(const Nat& n);

bool is_prime(std::uint64_t n);
bool is_prime(const Nat& n, unsigned rounds = kDefaultMillerRabinRounds);

/// base^exponent mod modulus. Throws std::domain_error when modulus == 0.
Nat mod_pow(const Nat& base, const Nat& exponent, const Nat& modulus);

/// Least non-negative representative of a mod m (m > 0), also for negative a.
Nat mod_floor(const Nat& a, const Nat& m);

/// Least k >= 1 with a^k == 1 (mod p). Throws std::domain_error when p is not
/// prime or p divides a.
Nat multiplicative_order(const Nat& a, const Nat& p);

/// Throws std::domain_error when p is not prime.
bool is_primitive_root(const Nat& a, const Nat& p);

/// All primes p <= bound having a as a primitive root, ascending.
std::vector<Nat> primes_with_primitive_root(const Nat& a, std::uint64_t bound);

/// Smallest prime strictly greater than n.
Nat next_prime(const Nat& n, unsigned rounds = kDefaultMillerRabinRounds);

/// Sieve of Eratosthenes.
std::vector<std::uint64_t> primes_up_to(std::uint64_t limit);

struct Congruence {
    Nat residue;
    Nat modulus;
};

using CongruenceSystem = std::vector<Congruence>;

/// Unique r < M = prod(moduli) satisfying every congruence; {0, 1} for the
/// empty system. Throws std::domain_error on a zero modulus, an unreduced
/// residue or non-coprime moduli.
Congruence crt_solve(std::span<const Congruence> system);

struct PrimePower {
    Nat prime;
    unsigned exponent = 0;
};

/// Prime factorization, ascending. Trial division up to 10^7, then
/// Pollard-Brent rho on composite cofactors.
std::vector<PrimePower> factorize(const Nat& n);

/// Some factor f with 1 < f < n, if n is composite and one is found within
/// the given effort. Numbers below 2^64 are always split (rho); larger ones
/// get trial division by primes below `trial_limit` only.
std::optional<Nat> find_factor(const Nat& n, std::uint64_t trial_limit = 10'000);

/// base^exponent kept symbolic. Used for power-construction elements and for
/// budget thresholds too large to materialize.
struct Power {
    Nat base;
    Nat exponent;
};

/// Approximate log2 of base^exponent (base >= 1).
double log2_of(const Power& p);
double log2_of(const Nat& n);

/// Writes n = root^k with k maximal. n >= 2.
std::pair<Nat, unsigned long> perfect_power_decompose(const Nat& n);

/// base^exponent, or nullopt if it would exceed max_bits.
std::optional<Nat> materialize(const Power& p, std::size_t max_bits = kMaxMaterializeBits);

/// Exact three-way comparison of two symbolic powers. Throws std::range_error
/// if deciding it would require materializing more than kMaxMaterializeBits.
std::strong_ordering compare(const Power& lhs, const Power& rhs);

/// Least k >= 0 with base^k >= target (base >= 2).
Nat min_exponent_reaching(const Nat& base, const Nat& target);
Nat min_exponent_reaching(const Nat& base, const Power& target);

}  // namespace admiss
