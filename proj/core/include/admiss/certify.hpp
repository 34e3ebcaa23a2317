#pragma once

// Blocking and coverage certificates.
//
// A blocking certificate for offset n shows that set + n holds a value that
// is not a positive prime:
//
//   NonPrimeMember  element x with x + n <= 1, with a factor, or failing
//                   Miller-Rabin (composite verdicts are never wrong).
//   TwoInClass      prime p and distinct members x1, x2 with
//                   x1 + n == x2 + n == 0 (mod p). At most one of two
//                   distinct multiples of p can equal p.
//
// Certificates are checked against the set contents only; nothing the
// construction recorded is trusted.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "admiss/arith.hpp"
#include "admiss/constructions.hpp"
#include "admiss/growing_set.hpp"

namespace admiss {

enum class NonPrimeReason { unit_or_nonpositive, factor, probable_composite };

std::string_view to_string(NonPrimeReason reason);

struct NonPrimeMember {
    std::size_t index = 0;
    NonPrimeReason reason = NonPrimeReason::probable_composite;
    std::optional<Nat> factor;
};

struct TwoInClass {
    Nat prime;
    std::size_t first = 0;
    std::size_t second = 0;
};

struct BlockingCertificate {
    std::int64_t offset = 0;
    std::variant<NonPrimeMember, TwoInClass> evidence;
    /// Whether every primality fact behind the evidence is exact.
    bool exact = true;
};

/// Non-prime evidence for set[index] + offset, or nullopt if that value is
/// prime (or too large to examine).
std::optional<NonPrimeMember> non_prime_evidence(const GrowingSet& set, std::size_t index, std::int64_t offset,
                                                 const PrimalityMode& mode = {});

/// Looks up TwoInClass evidence quickly for many offsets over one set.
class BlockingFinder {
public:
    BlockingFinder(const GrowingSet& set, std::span<const Nat> processed_primes, PrimalityMode mode = {});

    /// n = 0: first non-prime member. n != 0: TwoInClass for the smallest
    /// processed prime p not dividing n with two members == -n (mod p).
    std::optional<BlockingCertificate> find(std::int64_t n) const;

    std::optional<BlockingCertificate> find_two_in_class(std::int64_t n) const;

private:
    struct PrimeClasses {
        Nat prime;
        std::map<Nat, std::vector<std::size_t>> classes;
    };

    const GrowingSet& set_;
    std::vector<PrimeClasses> primes_;
    PrimalityMode mode_;
    std::optional<BlockingCertificate> zero_offset_;
};

std::optional<BlockingCertificate> find_blocking_certificate(const GrowingSet& set, std::int64_t n,
                                                             std::span<const Nat> processed_primes,
                                                             const PrimalityMode& mode = {});

bool verify_certificate(const GrowingSet& set, const BlockingCertificate& certificate, const PrimalityMode& mode = {});

struct WindowReport {
    std::string construction;
    std::int64_t n_max = 0;
    Nat product_of_primes = 1;
    /// Every |n| <= guaranteed_radius must be certified for a sound
    /// powers-primroot / direct-crt prefix.
    std::optional<std::int64_t> guaranteed_radius;
    std::vector<BlockingCertificate> certificates;  ///< ascending offset
    std::vector<std::int64_t> uncertified;          ///< ascending offset
    PrimalityMode primality;

    std::size_t window_size() const { return static_cast<std::size_t>(2 * n_max + 1); }
};

/// Certifies every offset in [-n_max, n_max]. Offsets are split across
/// `threads` workers (0 picks the hardware concurrency).
WindowReport certify_window(const ConstructionRun& run, std::int64_t n_max, unsigned threads = 0);

enum class CoverageMode { double_cover, no_singleton };

std::string_view to_string(CoverageMode mode);

struct CoverageCertificate {
    Nat prime;
    CoverageMode mode = CoverageMode::double_cover;
    /// residue -> member indices; empty classes are absent.
    std::map<Nat, std::vector<std::size_t>> witnesses;
};

class CoverageError : public std::runtime_error {
public:
    CoverageError(Nat prime, Nat residue, std::size_t count, const std::string& message)
        : std::runtime_error(message), prime_(std::move(prime)), residue_(std::move(residue)), count_(count) {}

    const Nat& prime() const noexcept { return prime_; }
    const Nat& residue() const noexcept { return residue_; }
    std::size_t count() const noexcept { return count_; }

private:
    Nat prime_;
    Nat residue_;
    std::size_t count_;
};

/// double-cover: every nonzero class holds >= min_copies members and class 0
/// none. no-singleton: no class holds exactly one member. Throws
/// CoverageError naming the first offending class; std::domain_error if p is
/// not prime.
CoverageCertificate coverage_certificate(const GrowingSet& set, const Nat& p, CoverageMode mode,
                                         unsigned min_copies = 2);
CoverageCertificate coverage_certificate(std::span<const Element> elements, const Nat& p, CoverageMode mode,
                                         unsigned min_copies = 2);

/// Coverage mode a construction promises for its processed primes, if any.
std::optional<CoverageMode> coverage_mode_for(ConstructionTag tag);

}  // namespace admiss
