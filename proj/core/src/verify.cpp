#include "admiss/verify.hpp"

#include "admiss/certify.hpp"

namespace admiss {

namespace {

VerificationFailure failure(std::string check, std::string message, std::optional<Nat> prime = std::nullopt,
                            std::optional<Nat> residue = std::nullopt) {
    VerificationFailure f;
    f.check = std::move(check);
    f.message = std::move(message);
    f.prime = std::move(prime);
    f.residue = std::move(residue);
    return f;
}

std::string element_label(const SetFile& file, std::size_t i) {
    return "element m=" + std::to_string(i + 1) + " (" + file.elements[i].describe() + ")";
}

std::optional<VerificationFailure> check_forms(const SetFile& file) {
    const bool power = is_power_construction(file.config.construction);
    for (std::size_t i = 0; i < file.elements.size(); ++i) {
        const Element& e = file.elements[i];
        if (power && (!e.is_power() || e.power().base != file.config.base))
            return failure("element-form",
                                       element_label(file, i) + " is not a power of the declared base " +
                                           file.config.base.get_str());
        if (e.is_power() && e.power().exponent < 1)
            return failure("element-form", element_label(file, i) + " has exponent below 1");
        if (e.is_power() && file.stated_values[i]) {
            const auto actual = e.value();
            if (!actual || *actual != *file.stated_values[i])
                return failure("element-form", element_label(file, i) + " does not equal its stated value " +
                                                               file.stated_values[i]->get_str());
        }
    }
    return std::nullopt;
}

std::optional<VerificationFailure> check_monotone(const SetFile& file) {
    for (std::size_t i = 1; i < file.elements.size(); ++i) {
        if (!(file.elements[i - 1] < file.elements[i]))
            return failure("monotonicity", element_label(file, i) + " does not exceed " +
                                                           element_label(file, i - 1));
    }
    return std::nullopt;
}

std::optional<VerificationFailure> check_sparsity_of(const SetFile& file) {
    if (auto bad = first_sparsity_violation(file.elements, file.config.budget)) {
        return failure("sparsity", element_label(file, *bad) + " is below T(" + std::to_string(*bad + 1) +
                                                   ") for budget " + file.config.budget.literal());
    }
    return std::nullopt;
}

std::optional<VerificationFailure> check_admissible(const SetFile& file) {
    if (file.elements.empty()) return std::nullopt;
    // Only primes <= |set| can be fully covered, and |set| <= max element.
    const Nat bound = file.elements.back().value().value_or(Nat(static_cast<unsigned long>(file.elements.size())));
    const auto result = is_admissible_upto(file.elements, bound);
    if (!result.admissible)
        return failure("admissibility",
                                   "every residue class mod " + result.failing_prime->get_str() + " is occupied",
                                   result.failing_prime, std::nullopt);
    return std::nullopt;
}

std::optional<VerificationFailure> check_reservations(const SetFile& file) {
    for (const auto& [q, r] : file.reservations.entries()) {
        for (std::size_t i = 0; i < file.elements.size(); ++i) {
            if (file.elements[i].residue(q) == r)
                return failure("reservations",
                                           element_label(file, i) + " lies in reserved class " + r.get_str() +
                                               " mod " + q.get_str(),
                                           q, r);
        }
    }
    return std::nullopt;
}

std::optional<VerificationFailure> check_coverage(const SetFile& file) {
    const auto mode = coverage_mode_for(file.config.construction);
    if (!mode) return std::nullopt;
    for (const auto& p : file.processed_primes) {
        if (!is_prime(p, file.config.mr_rounds))
            return failure("coverage", "declared processed prime " + p.get_str() + " is not prime", p,
                                       std::nullopt);
        try {
            coverage_certificate(file.elements, p, *mode, file.config.copies);
        } catch (const CoverageError& e) {
            return failure("coverage", e.what(), e.prime(), e.residue());
        }
    }
    return std::nullopt;
}

std::optional<VerificationFailure> check_blocked_offsets(const SetFile& file) {
    if (file.config.construction != ConstructionTag::offset_blocked) return std::nullopt;
    GrowingSet set;
    for (std::size_t i = 0; i < file.elements.size(); ++i) set.append(file.elements[i], file.provenance[i]);
    const PrimalityMode mode{file.config.mr_rounds};
    for (const auto& b : file.blocked_offsets) {
        const auto evidence = non_prime_evidence(set, b.index, b.offset, mode);
        if (!evidence || !verify_certificate(set, {b.offset, *evidence, true}, mode))
            return failure("blocked-offsets", "witness m=" + std::to_string(b.index + 1) + " for offset " +
                                                              std::to_string(b.offset) + " does not block it");
    }
    return std::nullopt;
}

std::optional<VerificationFailure> check_numbering(const SetFile& file) {
    for (std::size_t i = 0; i < file.declared_indices.size(); ++i) {
        if (file.declared_indices[i] != i + 1)
            return failure("numbering", "line for element " + std::to_string(i + 1) + " declares m=" +
                                                        std::to_string(file.declared_indices[i]));
    }
    return std::nullopt;
}

}  // namespace

VerificationReport verify_set_file(const SetFile& file) {
    using Check = std::optional<VerificationFailure> (*)(const SetFile&);
    static constexpr std::pair<const char*, Check> kChecks[] = {
        {"element-form", check_forms},       {"monotonicity", check_monotone},
        {"sparsity", check_sparsity_of},     {"admissibility", check_admissible},
        {"reservations", check_reservations}, {"coverage", check_coverage},
        {"blocked-offsets", check_blocked_offsets}, {"numbering", check_numbering},
    };

    VerificationReport report;
    for (const auto& [name, check] : kChecks) {
        try {
            if (auto failure = check(file)) {
                report.failure = std::move(failure);
                return report;
            }
        } catch (const std::exception& e) {
            report.failure = failure(name, e.what());
            return report;
        }
        report.passed.emplace_back(name);
    }
    return report;
}

}  // namespace admiss
