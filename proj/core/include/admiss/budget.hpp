#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "admiss/arith.hpp"

namespace admiss {

enum class BudgetKind { power, polynomial, doubly_exponential, table };

std::string_view to_string(BudgetKind kind);

/// A sparsity function f, stored as its inverse threshold
/// T(m) = least N with f(N) >= m. The m-th element of a set respects f
/// exactly when it is >= T(m).
///
///   power:b      T(m) = b^m
///   poly:d       T(m) = m^d
///   doubleexp:b  T(m) = b^(b^m)
///   table        explicit strictly increasing list; beyond it
///                T(m) = last * 2^(m - len)
class SparsityBudget {
public:
    static SparsityBudget power(Nat base);
    static SparsityBudget polynomial(unsigned long degree);
    static SparsityBudget doubly_exponential(Nat base);
    static SparsityBudget table(std::vector<Nat> thresholds);

    /// Parses `power:2`, `poly:3`, `doubleexp:2`, `table:10,100,1000` or
    /// `table:@file.json` (a JSON array of integers or decimal strings).
    /// Throws std::invalid_argument on malformed literals.
    static SparsityBudget parse(std::string_view literal);

    BudgetKind kind() const noexcept { return kind_; }
    const Nat& parameter() const noexcept { return parameter_; }
    const std::vector<Nat>& table_values() const noexcept { return table_; }

    /// Canonical literal; tables are written inline.
    std::string literal() const;

    /// T(m), m >= 1. Throws std::range_error if T(m) exceeds
    /// kMaxMaterializeBits.
    Nat threshold(std::size_t m) const;

    /// T(m) as base^exponent without materializing it.
    Power threshold_power(std::size_t m) const;

    /// Least k with base^k >= T(m).
    Nat min_exponent(const Nat& base, std::size_t m) const;

    /// value >= T(m), deciding by magnitude first so huge thresholds are only
    /// built when the value is comparably huge.
    bool admits(const Nat& value, std::size_t m) const;
    bool admits(const Power& value, std::size_t m) const;

    friend bool operator==(const SparsityBudget&, const SparsityBudget&) = default;

private:
    SparsityBudget(BudgetKind kind, Nat parameter, std::vector<Nat> table);

    BudgetKind kind_;
    Nat parameter_;
    std::vector<Nat> table_;
};

/// True iff elements[m-1] >= T(m) for every m. For strictly increasing
/// elements this is the same as |A ∩ [1, N]| <= f(N) for all N.
bool check_sparsity(std::span<const Nat> elements, const SparsityBudget& budget);

}  // namespace admiss
