#pragma once

// Slow, obviously-correct reference implementations for cross-checking.

#include <cstdint>
#include <optional>
#include <vector>

#include "admiss/arith.hpp"

namespace oracle {

inline bool trial_division_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

inline bool trial_division_prime(const admiss::Nat& n) {
    if (n < 2) return false;
    for (admiss::Nat d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

/// Sieve-free table for 0..limit.
inline std::vector<bool> prime_table(std::uint64_t limit) {
    std::vector<bool> out(limit + 1);
    for (std::uint64_t n = 0; n <= limit; ++n) out[n] = trial_division_prime(n);
    return out;
}

/// Least k >= 1 with a^k == 1 mod p by repeated multiplication.
inline std::uint64_t order_by_multiplication(std::uint64_t a, std::uint64_t p) {
    a %= p;
    std::uint64_t x = a;
    for (std::uint64_t k = 1; k <= p; ++k) {
        if (x == 1) return k;
        x = x * a % p;
    }
    return 0;
}

inline std::uint64_t pow_by_multiplication(std::uint64_t a, std::uint64_t k, std::uint64_t m) {
    std::uint64_t x = 1 % m;
    for (std::uint64_t i = 0; i < k; ++i) x = x * (a % m) % m;
    return x;
}

/// Smallest x in [0, prod) meeting every (residue, modulus) pair.
inline std::optional<std::uint64_t> crt_by_scan(const std::vector<std::pair<std::uint64_t, std::uint64_t>>& system) {
    std::uint64_t prod = 1;
    for (const auto& [r, m] : system) prod *= m;
    for (std::uint64_t x = 0; x < prod; ++x) {
        bool ok = true;
        for (const auto& [r, m] : system) ok = ok && x % m == r;
        if (ok) return x;
    }
    return std::nullopt;
}

inline std::vector<std::uint64_t> primitive_root_primes(std::uint64_t a, std::uint64_t bound) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t p = 2; p <= bound; ++p) {
        if (trial_division_prime(p) && a % p != 0 && order_by_multiplication(a, p) == p - 1) out.push_back(p);
    }
    return out;
}

}  // namespace oracle
