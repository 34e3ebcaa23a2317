#pragma once

#include <optional>
#include <string>
#include <vector>

#include "admiss/set_io.hpp"

namespace admiss {

struct VerificationFailure {
    std::string check;
    std::string message;
    std::optional<Nat> prime;
    std::optional<Nat> residue;
};

struct VerificationReport {
    std::vector<std::string> passed;
    std::optional<VerificationFailure> failure;

    bool ok() const noexcept { return !failure.has_value(); }
};

/// Re-checks a set file from its contents alone, stopping at the first
/// failing check. In order: element forms, strict monotonicity, sparsity
/// against the declared budget, admissibility up to the largest element,
/// emptiness of reserved classes, coverage for every declared processed
/// prime, recorded offset witnesses, and `m` numbering.
VerificationReport verify_set_file(const SetFile& file);

}  // namespace admiss
