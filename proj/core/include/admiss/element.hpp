#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>

#include "admiss/arith.hpp"

namespace admiss {

/// A set member, either an explicit value or base^exponent. Power elements
/// are never expanded unless asked for: residues come from mod_pow on the
/// exponent, so doubly-exponential budgets stay tractable.
class Element {
public:
    static Element of_value(Nat value);
    static Element of_power(Nat base, Nat exponent);

    bool is_power() const noexcept { return std::holds_alternative<Power>(form_); }
    const Power& power() const { return std::get<Power>(form_); }
    const Nat& value_form() const { return std::get<Nat>(form_); }

    /// As a symbolic power (value v is v^1).
    Power as_power() const;

    /// element mod modulus, in [0, modulus).
    Nat residue(const Nat& modulus) const;

    /// (element + offset) mod modulus, in [0, modulus).
    Nat translated_residue(std::int64_t offset, const Nat& modulus) const;

    std::optional<Nat> value(std::size_t max_bits = kMaxMaterializeBits) const;
    double log2() const;

    /// Decimal when at most `max_bits` bits, otherwise "b^e".
    std::string describe(std::size_t max_bits = 256) const;

    friend std::strong_ordering operator<=>(const Element& lhs, const Element& rhs);
    friend bool operator==(const Element& lhs, const Element& rhs) { return (lhs <=> rhs) == 0; }

private:
    explicit Element(std::variant<Nat, Power> form) : form_(std::move(form)) {}

    std::variant<Nat, Power> form_;
};

struct SeedComposite {
    friend bool operator==(const SeedComposite&, const SeedComposite&) = default;
};

/// Added to give prime `prime` its `copy`-th member in class `residue`.
struct Cover {
    Nat prime;
    Nat residue;
    unsigned copy = 1;

    friend bool operator==(const Cover&, const Cover&) = default;
};

/// Added so that element + offset is not prime.
struct Blocker {
    std::int64_t offset = 0;

    friend bool operator==(const Blocker&, const Blocker&) = default;
};

using Provenance = std::variant<SeedComposite, Cover, Blocker>;

}  // namespace admiss
