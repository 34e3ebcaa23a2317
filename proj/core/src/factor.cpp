#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

#include "admiss/arith.hpp"
#include "detail/u64.hpp"

namespace admiss {

namespace {

constexpr std::uint64_t kTrialDivisionLimit = 10'000'000;

std::uint64_t abs_diff(std::uint64_t a, std::uint64_t b) { return a > b ? a - b : b - a; }

// Pollard-Brent. n odd, composite, not a perfect square of a tiny prime.
std::uint64_t rho(std::uint64_t n) {
    for (std::uint64_t c = 1;; ++c) {
        auto step = [n, c](std::uint64_t v) {
            return static_cast<std::uint64_t>((static_cast<detail::u128>(v) * v + c) % n);
        };
        std::uint64_t y = 2, x = 2, ys = 2, q = 1, g = 1;
        std::uint64_t r = 1;
        constexpr std::uint64_t batch = 128;
        do {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i) y = step(y);
            for (std::uint64_t k = 0; k < r && g == 1; k += batch) {
                ys = y;
                for (std::uint64_t i = 0; i < std::min(batch, r - k); ++i) {
                    y = step(y);
                    q = detail::mul_mod(q, abs_diff(x, y), n);
                }
                g = std::gcd(q, n);
            }
            r <<= 1;
        } while (g == 1);
        if (g == n) {
            do {
                ys = step(ys);
                g = std::gcd(abs_diff(x, ys), n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

Nat rho(const Nat& n) {
    for (unsigned long c = 1;; ++c) {
        auto step = [&n, c](const Nat& v) { return Nat((v * v + c) % n); };
        Nat y = 2, x = 2, ys = 2, q = 1, g = 1;
        unsigned long r = 1;
        constexpr unsigned long batch = 128;
        do {
            x = y;
            for (unsigned long i = 0; i < r; ++i) y = step(y);
            for (unsigned long k = 0; k < r && g == 1; k += batch) {
                ys = y;
                for (unsigned long i = 0; i < std::min(batch, r - k); ++i) {
                    y = step(y);
                    q = q * abs(Nat(x - y)) % n;
                }
                g = gcd(q, n);
            }
            r <<= 1;
        } while (g == 1);
        if (g == n) {
            do {
                ys = step(ys);
                g = gcd(Nat(x - ys), n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

void split(const Nat& n, std::map<Nat, unsigned>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        ++out[n];
        return;
    }
    Nat factor;
    if (mpz_fits_ulong_p(n.get_mpz_t())) {
        factor = Nat(rho(static_cast<std::uint64_t>(n.get_ui())));
    } else {
        factor = rho(n);
    }
    split(factor, out);
    split(Nat(n / factor), out);
}

}  // namespace

std::vector<PrimePower> factorize(const Nat& n) {
    if (n < 1) throw std::domain_error("factorize: n must be >= 1");
    std::map<Nat, unsigned> found;
    Nat rest = n;

    bool rest_is_prime = is_prime(rest);
    for (std::uint64_t d = 2; rest > 1 && !rest_is_prime && d <= kTrialDivisionLimit; d += (d == 2 ? 1 : 2)) {
        if (mpz_cmp_ui(rest.get_mpz_t(), d * d) < 0) {
            rest_is_prime = true;
            break;
        }
        if (!mpz_divisible_ui_p(rest.get_mpz_t(), d)) continue;
        do {
            mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), d);
            ++found[Nat(static_cast<unsigned long>(d))];
        } while (mpz_divisible_ui_p(rest.get_mpz_t(), d));
        rest_is_prime = is_prime(rest);
    }
    if (rest > 1) {
        if (rest_is_prime) {
            ++found[rest];
        } else {
            split(rest, found);
        }
    }

    std::vector<PrimePower> out;
    out.reserve(found.size());
    for (auto& [p, e] : found) out.push_back({p, e});
    return out;
}

std::optional<Nat> find_factor(const Nat& n, std::uint64_t trial_limit) {
    if (n < 4) return std::nullopt;
    if (mpz_fits_ulong_p(n.get_mpz_t())) {
        const std::uint64_t v = n.get_ui();
        if (is_prime(v)) return std::nullopt;
        for (std::uint64_t d = 2; d <= trial_limit && d * d <= v; d += (d == 2 ? 1 : 2)) {
            if (v % d == 0) return Nat(static_cast<unsigned long>(d));
        }
        return Nat(rho(v));
    }
    for (std::uint64_t d = 2; d <= trial_limit; d += (d == 2 ? 1 : 2)) {
        if (mpz_divisible_ui_p(n.get_mpz_t(), d)) return Nat(static_cast<unsigned long>(d));
    }
    return std::nullopt;
}

}  // namespace admiss
