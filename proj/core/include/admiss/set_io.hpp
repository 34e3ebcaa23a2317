#pragma once

// JSON Lines set files.
//
// Line 1 is a metadata object:
//   {format_version, construction_tag, params, budget, primality_mode,
//    generated_at?}
// Each further line is one element:
//   {m, value?, base?, exponent?, provenance}
// Big integers are decimal strings. Power elements may omit `value`; readers
// recompute residues from base and exponent.

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "admiss/constructions.hpp"

namespace admiss {

inline constexpr int kSetFormatVersion = 1;

/// Power elements carry an explicit `value` only up to this many bits.
inline constexpr std::size_t kInlineValueBits = 4096;

/// Raw file contents. Nothing here is assumed consistent; verification
/// decides that.
struct SetFile {
    int format_version = kSetFormatVersion;
    ConstructionConfig config;
    std::vector<Nat> processed_primes;
    ReservationTable reservations;
    std::vector<BlockedOffset> blocked_offsets;
    bool truncated = false;
    std::string primality_mode;
    std::optional<std::string> generated_at;

    std::vector<Element> elements;
    std::vector<Provenance> provenance;
    /// `value` written next to base/exponent, when present.
    std::vector<std::optional<Nat>> stated_values;
    /// `m` as written.
    std::vector<std::size_t> declared_indices;
};

/// Malformed or unreadable file (as opposed to one that fails verification).
class SetFileError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

SetFile to_set_file(const ConstructionRun& run);

/// Throws std::invalid_argument if the elements are not strictly increasing.
ConstructionRun to_run(const SetFile& file);

void write_set_file(std::ostream& out, const SetFile& file);
SetFile read_set_file(std::istream& in);

void save_set_file(const std::filesystem::path& path, const SetFile& file);
SetFile load_set_file(const std::filesystem::path& path);

/// UTC time as ISO 8601, for the `generated_at` metadata key.
std::string utc_timestamp();

}  // namespace admiss
