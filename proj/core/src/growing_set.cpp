#include "admiss/growing_set.hpp"

#include <algorithm>
#include <stdexcept>

namespace admiss {

void GrowingSet::append(Element element, Provenance provenance) {
    if (!elements_.empty() && !(elements_.back() < element))
        throw std::invalid_argument("GrowingSet: element " + element.describe() + " does not exceed " +
                                    elements_.back().describe());
    elements_.push_back(std::move(element));
    provenance_.push_back(std::move(provenance));
}

std::optional<std::size_t> first_sparsity_violation(std::span<const Element> elements, const SparsityBudget& budget) {
    for (std::size_t i = 0; i < elements.size(); ++i) {
        if (!budget.admits(elements[i].as_power(), i + 1)) return i;
    }
    return std::nullopt;
}

bool check_sparsity(const GrowingSet& set, const SparsityBudget& budget) {
    return !first_sparsity_violation(set.elements(), budget).has_value();
}

ResidueProfile::ResidueProfile(Nat prime, std::map<Nat, std::vector<std::size_t>> classes, std::size_t total)
    : prime_(std::move(prime)), classes_(std::move(classes)), total_(total) {}

std::size_t ResidueProfile::count(const Nat& residue) const {
    const auto it = classes_.find(residue);
    return it == classes_.end() ? 0 : it->second.size();
}

std::optional<Nat> ResidueProfile::first_empty_class(const Nat& from) const {
    Nat r = from;
    for (auto it = classes_.lower_bound(from); it != classes_.end() && it->first == r; ++it) ++r;
    if (r < prime_) return r;
    return std::nullopt;
}

ResidueProfile residue_profile(std::span<const Element> elements, const Nat& p) {
    if (!is_prime(p)) throw std::domain_error("residue_profile: " + p.get_str() + " is not prime");
    std::map<Nat, std::vector<std::size_t>> classes;
    for (std::size_t i = 0; i < elements.size(); ++i) classes[elements[i].residue(p)].push_back(i);
    return {p, std::move(classes), elements.size()};
}

ResidueProfile residue_profile(const GrowingSet& set, const Nat& p) { return residue_profile(set.elements(), p); }

bool is_admissible_at(std::span<const Element> elements, const Nat& p) {
    if (!is_prime(p)) throw std::domain_error("is_admissible_at: " + p.get_str() + " is not prime");
    if (cmp(p, static_cast<unsigned long>(elements.size())) > 0) return true;
    return residue_profile(elements, p).occupied_classes() < p;
}

bool is_admissible_at(const GrowingSet& set, const Nat& p) { return is_admissible_at(set.elements(), p); }

AdmissibilityResult is_admissible_upto(std::span<const Element> elements, const Nat& bound) {
    const Nat count(static_cast<unsigned long>(elements.size()));
    const Nat limit = bound < count ? bound : count;
    if (limit < 2) return {};
    for (auto p : primes_up_to(limit.get_ui())) {
        const Nat prime(static_cast<unsigned long>(p));
        if (!is_admissible_at(elements, prime)) return {false, prime};
    }
    return {};
}

AdmissibilityResult is_admissible_upto(const GrowingSet& set, const Nat& bound) {
    return is_admissible_upto(set.elements(), bound);
}

std::optional<Nat> ReservationTable::reserved(const Nat& q) const {
    const auto it = entries_.find(q);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

void ReservationTable::record(Nat q, Nat r) {
    if (r < 0 || r >= q) throw std::invalid_argument("ReservationTable: residue " + r.get_str() + " not reduced mod " + q.get_str());
    if (entries_.contains(q)) throw std::invalid_argument("ReservationTable: " + q.get_str() + " already reserved");
    entries_.emplace(std::move(q), std::move(r));
}

bool ReservationTable::admits(const Nat& value) const {
    return std::none_of(entries_.begin(), entries_.end(),
                        [&](const auto& entry) { return mod_floor(value, entry.first) == entry.second; });
}

bool ReservationTable::admits(const Element& element) const {
    return std::none_of(entries_.begin(), entries_.end(),
                        [&](const auto& entry) { return element.residue(entry.first) == entry.second; });
}

Nat reserve_residue(ReservationTable& table, const GrowingSet& set, const Nat& q) {
    if (!is_prime(q)) throw std::domain_error("reserve_residue: " + q.get_str() + " is not prime");
    if (table.contains(q)) throw std::invalid_argument("reserve_residue: " + q.get_str() + " already reserved");
    if (cmp(q, static_cast<unsigned long>(set.size())) <= 0)
        throw std::invalid_argument("reserve_residue: set has " + std::to_string(set.size()) +
                                    " elements, not fewer than " + q.get_str());
    const auto free = residue_profile(set, q).first_empty_class();
    if (!free) throw std::logic_error("reserve_residue: every class mod " + q.get_str() + " is occupied");
    table.record(q, *free);
    return *free;
}

}  // namespace admiss
