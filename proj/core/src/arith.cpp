#include "admiss/arith.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "detail/u64.hpp"

namespace admiss {

namespace {

// Deterministic for every n < 3.3 * 10^24, which covers all of uint64.
constexpr std::array<std::uint64_t, 12> kWitnessBases = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

constexpr std::array<unsigned long, 24> kSmallPrimes = {
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};

bool strong_probable_prime(std::uint64_t n, std::uint64_t a) {
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    std::uint64_t x = detail::pow_mod(a % n, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < s; ++i) {
        x = detail::mul_mod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

bool strong_probable_prime(const Nat& n, const Nat& a) {
    Nat d = n - 1;
    const mp_bitcnt_t s = mpz_scan1(d.get_mpz_t(), 0);
    mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
    const Nat minus_one = n - 1;
    Nat x = mod_pow(a, d, n);
    if (x == 1 || x == minus_one) return true;
    for (mp_bitcnt_t i = 1; i < s; ++i) {
        x = x * x % n;
        if (x == minus_one) return true;
    }
    return false;
}

bool fits_u64(const Nat& n) {
    return sgn(n) >= 0 && mpz_fits_ulong_p(n.get_mpz_t()) != 0;
}

}  // namespace

std::string PrimalityMode::describe() const {
    return "deterministic below 2^64; Miller-Rabin with " + std::to_string(rounds) + " rounds above";
}

bool primality_is_exact(const Nat& n) {
    return sgn(n) < 0 || fits_u64(n);
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (auto p : kSmallPrimes) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    if (n < 97 * 97) return true;
    return std::all_of(kWitnessBases.begin(), kWitnessBases.end(),
                       [n](std::uint64_t a) { return strong_probable_prime(n, a); });
}

bool is_prime(const Nat& n, unsigned rounds) {
    if (sgn(n) <= 0) return false;
    if (fits_u64(n)) return is_prime(static_cast<std::uint64_t>(n.get_ui()));
    if (mpz_even_p(n.get_mpz_t())) return false;
    for (auto p : kSmallPrimes) {
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
    }
    for (unsigned long p = 101; p < 2000; p += 2) {
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
    }
    if (!strong_probable_prime(n, Nat(2))) return false;

    // Fixed seed: the same number always gets the same verdict.
    gmp_randclass rng(gmp_randinit_mt);
    rng.seed(0xAD0155ul);
    const Nat span = n - 3;
    for (unsigned i = 1; i < rounds; ++i) {
        const Nat a = rng.get_z_range(span) + 2;
        if (!strong_probable_prime(n, a)) return false;
    }
    return true;
}

Nat mod_pow(const Nat& base, const Nat& exponent, const Nat& modulus) {
    if (sgn(modulus) <= 0) throw std::domain_error("mod_pow: modulus must be >= 1");
    if (sgn(exponent) < 0) throw std::domain_error("mod_pow: exponent must be >= 0");
    Nat result;
    mpz_powm(result.get_mpz_t(), base.get_mpz_t(), exponent.get_mpz_t(), modulus.get_mpz_t());
    return result;
}

Nat mod_floor(const Nat& a, const Nat& m) {
    Nat r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

Nat multiplicative_order(const Nat& a, const Nat& p) {
    if (!is_prime(p)) throw std::domain_error("multiplicative_order: modulus " + p.get_str() + " is not prime");
    const Nat reduced = mod_floor(a, p);
    if (reduced == 0) throw std::domain_error("multiplicative_order: " + p.get_str() + " divides the base");

    Nat order = p - 1;
    for (const auto& [q, e] : factorize(order)) {
        for (unsigned i = 0; i < e; ++i) {
            const Nat candidate = order / q;
            if (mod_pow(reduced, candidate, p) != 1) break;
            order = candidate;
        }
    }
    return order;
}

bool is_primitive_root(const Nat& a, const Nat& p) {
    if (!is_prime(p)) throw std::domain_error("is_primitive_root: modulus " + p.get_str() + " is not prime");
    if (mod_floor(a, p) == 0) return false;
    return multiplicative_order(a, p) == p - 1;
}

std::vector<Nat> primes_with_primitive_root(const Nat& a, std::uint64_t bound) {
    if (a < 2) throw std::invalid_argument("primes_with_primitive_root: base must be >= 2");
    std::vector<Nat> out;
    for (auto p : primes_up_to(bound)) {
        const Nat prime(static_cast<unsigned long>(p));
        if (is_primitive_root(a, prime)) out.push_back(prime);
    }
    return out;
}

Nat next_prime(const Nat& n, unsigned rounds) {
    if (n < 2) return Nat(2);
    Nat candidate = n + 1;
    if (mpz_even_p(candidate.get_mpz_t())) ++candidate;
    while (!is_prime(candidate, rounds)) candidate += 2;
    return candidate;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t limit) {
    std::vector<std::uint64_t> primes;
    if (limit < 2) return primes;
    std::vector<bool> composite(limit + 1, false);
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        primes.push_back(i);
        if (i <= limit / i) {
            for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
        }
    }
    return primes;
}

Congruence crt_solve(std::span<const Congruence> system) {
    for (const auto& c : system) {
        if (c.modulus < 1) throw std::domain_error("crt_solve: modulus must be >= 1");
        if (c.residue < 0 || c.residue >= c.modulus)
            throw std::domain_error("crt_solve: residue " + c.residue.get_str() + " not reduced mod " +
                                    c.modulus.get_str());
    }
    for (std::size_t i = 0; i < system.size(); ++i) {
        for (std::size_t j = i + 1; j < system.size(); ++j) {
            if (gcd(system[i].modulus, system[j].modulus) != 1)
                throw std::domain_error("crt_solve: moduli " + system[i].modulus.get_str() + " and " +
                                        system[j].modulus.get_str() + " are not coprime");
        }
    }

    Nat x = 0;
    Nat modulus = 1;
    for (const auto& c : system) {
        if (c.modulus == 1) continue;
        Nat inverse;
        const Nat reduced = modulus % c.modulus;
        mpz_invert(inverse.get_mpz_t(), reduced.get_mpz_t(), c.modulus.get_mpz_t());
        const Nat step = mod_floor((c.residue - x) * inverse, c.modulus);
        x += modulus * step;
        modulus *= c.modulus;
    }
    return {x, modulus};
}

double log2_of(const Nat& n) {
    if (sgn(n) <= 0) return -std::numeric_limits<double>::infinity();
    long exp = 0;
    const double mantissa = mpz_get_d_2exp(&exp, n.get_mpz_t());
    return static_cast<double>(exp) + std::log2(mantissa);
}

double log2_of(const Power& p) {
    if (sgn(p.exponent) == 0) return 0.0;
    if (p.base <= 1) return p.base == 1 ? 0.0 : -std::numeric_limits<double>::infinity();
    return p.exponent.get_d() * log2_of(p.base);
}

std::pair<Nat, unsigned long> perfect_power_decompose(const Nat& n) {
    if (n < 2) throw std::invalid_argument("perfect_power_decompose: n must be >= 2");
    const auto bits = mpz_sizeinbase(n.get_mpz_t(), 2);
    if (mpz_perfect_power_p(n.get_mpz_t()) != 0) {
        Nat root;
        for (unsigned long k = bits; k >= 2; --k) {
            if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), k) != 0) return {root, k};
        }
    }
    return {n, 1};
}

std::optional<Nat> materialize(const Power& p, std::size_t max_bits) {
    if (sgn(p.exponent) == 0) return Nat(1);
    if (p.base <= 1) return p.base;
    if (log2_of(p) > static_cast<double>(max_bits) + 1.0) return std::nullopt;
    if (!fits_u64(p.exponent)) return std::nullopt;
    Nat out;
    mpz_pow_ui(out.get_mpz_t(), p.base.get_mpz_t(), p.exponent.get_ui());
    return out;
}

std::strong_ordering compare(const Power& lhs, const Power& rhs) {
    const bool lhs_trivial = sgn(lhs.exponent) == 0 || lhs.base <= 1;
    const bool rhs_trivial = sgn(rhs.exponent) == 0 || rhs.base <= 1;
    if (!lhs_trivial && !rhs_trivial && lhs.base == rhs.base) return cmp(lhs.exponent, rhs.exponent) <=> 0;

    const double lhs_log = log2_of(lhs);
    const double rhs_log = log2_of(rhs);
    const double margin = 2.0 + 1e-9 * std::max(std::abs(lhs_log), std::abs(rhs_log));
    if (!lhs_trivial && !rhs_trivial) {
        if (lhs_log + margin < rhs_log) return std::strong_ordering::less;
        if (rhs_log + margin < lhs_log) return std::strong_ordering::greater;
    }

    const auto lhs_value = materialize(lhs);
    const auto rhs_value = materialize(rhs);
    if (lhs_value && rhs_value) return cmp(*lhs_value, *rhs_value) <=> 0;

    // Both huge and within a few bits of each other: exact only when the
    // bases share a root.
    const auto [lhs_root, lhs_k] = perfect_power_decompose(lhs.base);
    const auto [rhs_root, rhs_k] = perfect_power_decompose(rhs.base);
    if (lhs_root == rhs_root) {
        const Nat lhs_scaled = lhs.exponent * lhs_k;
        const Nat rhs_scaled = rhs.exponent * rhs_k;
        return cmp(lhs_scaled, rhs_scaled) <=> 0;
    }
    throw std::range_error("compare: powers " + lhs.base.get_str() + "^" + lhs.exponent.get_str() + " and " +
                           rhs.base.get_str() + "^" + rhs.exponent.get_str() + " are too large to compare exactly");
}

Nat min_exponent_reaching(const Nat& base, const Nat& target) {
    if (base < 2) throw std::invalid_argument("min_exponent_reaching: base must be >= 2");
    if (target <= 1) return Nat(0);

    const double estimate = std::floor(log2_of(target) / log2_of(base));
    unsigned long k = estimate > 1.0 ? static_cast<unsigned long>(estimate) - 1 : 0;
    Nat power;
    mpz_pow_ui(power.get_mpz_t(), base.get_mpz_t(), k);
    while (power < target) {
        power *= base;
        ++k;
    }
    while (k > 0) {
        const Nat lower = power / base;
        if (lower < target) break;
        power = lower;
        --k;
    }
    return Nat(k);
}

Nat min_exponent_reaching(const Nat& base, const Power& target) {
    if (base < 2) throw std::invalid_argument("min_exponent_reaching: base must be >= 2");
    if (sgn(target.exponent) == 0 || target.base <= 1) return Nat(0);
    if (target.base == base) return target.exponent;
    if (auto value = materialize(target)) return min_exponent_reaching(base, *value);

    const auto [root, k] = perfect_power_decompose(base);
    const auto [target_root, target_k] = perfect_power_decompose(target.base);
    if (root != target_root)
        throw std::range_error("min_exponent_reaching: threshold " + target.base.get_str() + "^" +
                               target.exponent.get_str() + " is too large to compare exactly against powers of " +
                               base.get_str());
    Nat needed = target.exponent * target_k;
    Nat out;
    mpz_cdiv_q_ui(out.get_mpz_t(), needed.get_mpz_t(), k);
    return out;
}

}  // namespace admiss
