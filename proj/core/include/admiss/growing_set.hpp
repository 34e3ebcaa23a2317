#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "admiss/arith.hpp"
#include "admiss/budget.hpp"
#include "admiss/element.hpp"

namespace admiss {

/// Strictly increasing, append-only sequence of naturals with per-element
/// provenance. Owned by one construction while it grows; read-only after.
class GrowingSet {
public:
    /// Throws std::invalid_argument unless element > back().
    void append(Element element, Provenance provenance);

    std::size_t size() const noexcept { return elements_.size(); }
    bool empty() const noexcept { return elements_.empty(); }

    const Element& operator[](std::size_t i) const { return elements_[i]; }
    const Element& back() const { return elements_.back(); }
    std::span<const Element> elements() const noexcept { return elements_; }
    const Provenance& provenance(std::size_t i) const { return provenance_[i]; }

private:
    std::vector<Element> elements_;
    std::vector<Provenance> provenance_;
};

/// Index of the first element violating e_m >= T(m), if any.
std::optional<std::size_t> first_sparsity_violation(std::span<const Element> elements, const SparsityBudget& budget);
bool check_sparsity(const GrowingSet& set, const SparsityBudget& budget);

/// Class counts of a set modulo one prime. Stored sparsely (residue -> indices
/// of the members in that class) because primes may be far larger than the
/// set.
class ResidueProfile {
public:
    ResidueProfile(Nat prime, std::map<Nat, std::vector<std::size_t>> classes, std::size_t total);

    const Nat& prime() const noexcept { return prime_; }
    std::size_t count(const Nat& residue) const;
    std::size_t total() const noexcept { return total_; }
    std::size_t occupied_classes() const noexcept { return classes_.size(); }
    const std::map<Nat, std::vector<std::size_t>>& classes() const noexcept { return classes_; }

    /// Smallest residue >= from with no member, or nullopt if every class
    /// from there up to p - 1 is occupied.
    std::optional<Nat> first_empty_class(const Nat& from = Nat(0)) const;

private:
    Nat prime_;
    std::map<Nat, std::vector<std::size_t>> classes_;
    std::size_t total_;
};

/// Throws std::domain_error when p is not prime.
ResidueProfile residue_profile(const GrowingSet& set, const Nat& p);
ResidueProfile residue_profile(std::span<const Element> elements, const Nat& p);

/// Some class mod p is empty. Throws std::domain_error when p is not prime.
bool is_admissible_at(const GrowingSet& set, const Nat& p);
bool is_admissible_at(std::span<const Element> elements, const Nat& p);

struct AdmissibilityResult {
    bool admissible = true;
    std::optional<Nat> failing_prime;
};

/// Checks every prime p <= bound. Primes above |set| cannot have every class
/// hit, so only p <= min(bound, |set|) are examined.
AdmissibilityResult is_admissible_upto(const GrowingSet& set, const Nat& bound);
AdmissibilityResult is_admissible_upto(std::span<const Element> elements, const Nat& bound);

/// Residue classes pledged to stay empty, one per prime.
class ReservationTable {
public:
    bool contains(const Nat& q) const { return entries_.contains(q); }
    std::optional<Nat> reserved(const Nat& q) const;
    const std::map<Nat, Nat>& entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }

    /// Records q -> r. Throws std::invalid_argument if q is already present
    /// or r >= q.
    void record(Nat q, Nat r);

    /// value avoids every reserved class.
    bool admits(const Nat& value) const;
    bool admits(const Element& element) const;

    friend bool operator==(const ReservationTable&, const ReservationTable&) = default;

private:
    std::map<Nat, Nat> entries_;
};

/// Reserves the smallest residue mod q that no member occupies and returns
/// it. Requires q prime, q not yet reserved and |set| < q.
Nat reserve_residue(ReservationTable& table, const GrowingSet& set, const Nat& q);

}  // namespace admiss
