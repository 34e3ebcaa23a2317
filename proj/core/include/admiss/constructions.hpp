#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "admiss/arith.hpp"
#include "admiss/budget.hpp"
#include "admiss/growing_set.hpp"

namespace admiss {

enum class ConstructionTag {
    powers_primroot,  ///< powers of a, two per nonzero class of primes with a as primitive root
    direct_crt,       ///< arbitrary integers placed by CRT, reserving one class per prime
    powers_subgroup,  ///< powers of c, two per attained class, any c >= 2
    offset_blocked,   ///< one witness d_n with d_n + n composite for each offset n
};

std::string_view to_string(ConstructionTag tag);
std::optional<ConstructionTag> parse_construction_tag(std::string_view text);
bool is_power_construction(ConstructionTag tag);

struct ConstructionConfig {
    ConstructionTag construction = ConstructionTag::powers_primroot;
    Nat base = 2;
    SparsityBudget budget = SparsityBudget::power(Nat(2));
    std::size_t prime_quota = 0;
    /// Explicit primes for the power constructions; overrides prime_quota.
    std::vector<Nat> prime_list;
    unsigned copies = 2;
    std::size_t offset_quota = 0;
    /// Candidates examined per element by the scanning constructions.
    std::uint64_t scan_ceiling = 1'000'000;
    /// Largest prime tried when looking for primes to process.
    std::uint64_t prime_search_ceiling = 1'000'000;
    /// Stop once the set holds this many elements.
    std::optional<std::size_t> element_limit;
    unsigned mr_rounds = kDefaultMillerRabinRounds;
};

/// Throws std::invalid_argument for inconsistent configurations.
void validate(const ConstructionConfig& config);

/// Offset n and the index of its witness d_n (d_n + n is not prime).
struct BlockedOffset {
    std::int64_t offset = 0;
    std::size_t index = 0;

    friend bool operator==(const BlockedOffset&, const BlockedOffset&) = default;
};

struct ConstructionRun {
    ConstructionConfig config;
    GrowingSet set;
    /// Primes whose classes were fully covered, ascending.
    std::vector<Nat> processed_primes;
    ReservationTable reservations;
    std::vector<BlockedOffset> blocked_offsets;
    /// The element limit stopped the run before its quotas were met.
    bool truncated = false;
};

class ConstructionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

ConstructionRun construct(const ConstructionConfig& config);

ConstructionRun construct_powers_primroot(const ConstructionConfig& config);
ConstructionRun construct_direct_crt(const ConstructionConfig& config);
ConstructionRun construct_powers_subgroup(const ConstructionConfig& config);
ConstructionRun construct_offset_blocked(const ConstructionConfig& config);

}  // namespace admiss
