#include "admiss/certify.hpp"

#include <algorithm>
#include <limits>
#include <thread>
#include <unordered_map>

namespace admiss {

namespace {

Nat translated_value(const Nat& value, std::int64_t offset) { return value + Nat(static_cast<long>(offset)); }

bool offset_is_multiple(std::int64_t n, const Nat& p) {
    return mod_floor(Nat(static_cast<long>(n)), p) == 0;
}

}  // namespace

std::string_view to_string(NonPrimeReason reason) {
    switch (reason) {
        case NonPrimeReason::unit_or_nonpositive: return "unit-or-nonpositive";
        case NonPrimeReason::factor: return "factor";
        case NonPrimeReason::probable_composite: return "probable-composite";
    }
    return "unknown";
}

std::string_view to_string(CoverageMode mode) {
    return mode == CoverageMode::double_cover ? "double-cover" : "no-singleton";
}

std::optional<NonPrimeMember> non_prime_evidence(const GrowingSet& set, std::size_t index, std::int64_t offset,
                                                 const PrimalityMode& mode) {
    if (index >= set.size()) return std::nullopt;
    const Element& e = set[index];
    if (offset == 0 && e.is_power() && e.power().base >= 2 && e.power().exponent >= 2)
        return NonPrimeMember{index, NonPrimeReason::factor, e.power().base};

    const auto value = e.value();
    if (!value) return std::nullopt;
    const Nat y = translated_value(*value, offset);
    if (y <= 1) return NonPrimeMember{index, NonPrimeReason::unit_or_nonpositive, std::nullopt};
    if (auto f = find_factor(y)) return NonPrimeMember{index, NonPrimeReason::factor, std::move(f)};
    if (!is_prime(y, mode.rounds)) return NonPrimeMember{index, NonPrimeReason::probable_composite, std::nullopt};
    return std::nullopt;
}

BlockingFinder::BlockingFinder(const GrowingSet& set, std::span<const Nat> processed_primes, PrimalityMode mode)
    : set_(set), mode_(mode) {
    std::vector<Nat> sorted(processed_primes.begin(), processed_primes.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (auto& p : sorted) {
        PrimeClasses pc{p, {}};
        for (std::size_t i = 0; i < set.size(); ++i) {
            auto& members = pc.classes[set[i].residue(p)];
            if (members.size() < 2) members.push_back(i);
        }
        primes_.push_back(std::move(pc));
    }
}

std::optional<BlockingCertificate> BlockingFinder::find(std::int64_t n) const {
    if (set_.empty()) return std::nullopt;
    if (n != 0) return find_two_in_class(n);
    for (std::size_t i = 0; i < set_.size(); ++i) {
        if (auto evidence = non_prime_evidence(set_, i, 0, mode_)) {
            const bool exact = evidence->reason != NonPrimeReason::probable_composite ||
                               primality_is_exact(*set_[i].value());
            return BlockingCertificate{0, std::move(*evidence), exact};
        }
    }
    return std::nullopt;
}

std::optional<BlockingCertificate> BlockingFinder::find_two_in_class(std::int64_t n) const {
    const Nat negated(-static_cast<long>(n));
    for (const auto& pc : primes_) {
        if (offset_is_multiple(n, pc.prime)) continue;
        const auto it = pc.classes.find(mod_floor(negated, pc.prime));
        if (it == pc.classes.end() || it->second.size() < 2) continue;
        return BlockingCertificate{n, TwoInClass{pc.prime, it->second[0], it->second[1]},
                                   primality_is_exact(pc.prime)};
    }
    return std::nullopt;
}

std::optional<BlockingCertificate> find_blocking_certificate(const GrowingSet& set, std::int64_t n,
                                                             std::span<const Nat> processed_primes,
                                                             const PrimalityMode& mode) {
    if (n == 0) return BlockingFinder(set, {}, mode).find(0);
    return BlockingFinder(set, processed_primes, mode).find(n);
}

bool verify_certificate(const GrowingSet& set, const BlockingCertificate& certificate, const PrimalityMode& mode) {
    const std::int64_t n = certificate.offset;
    if (const auto* two = std::get_if<TwoInClass>(&certificate.evidence)) {
        if (two->first == two->second || two->first >= set.size() || two->second >= set.size()) return false;
        if (!is_prime(two->prime, mode.rounds)) return false;
        return set[two->first].translated_residue(n, two->prime) == 0 &&
               set[two->second].translated_residue(n, two->prime) == 0;
    }

    const auto& member = std::get<NonPrimeMember>(certificate.evidence);
    if (member.index >= set.size()) return false;
    const Element& e = set[member.index];
    const auto value = e.value();
    switch (member.reason) {
        case NonPrimeReason::unit_or_nonpositive:
            return value && translated_value(*value, n) <= 1;
        case NonPrimeReason::factor: {
            if (!member.factor || *member.factor <= 1) return false;
            const Nat& f = *member.factor;
            if (e.translated_residue(n, f) != 0) return false;
            // f must be a proper divisor: f < e + n.
            if (value) return f < translated_value(*value, n);
            return e.log2() > log2_of(f) + 64.0;
        }
        case NonPrimeReason::probable_composite: {
            if (!value) return false;
            const Nat y = translated_value(*value, n);
            return y > 1 && !is_prime(y, mode.rounds);
        }
    }
    return false;
}

WindowReport certify_window(const ConstructionRun& run, std::int64_t n_max, unsigned threads) {
    if (n_max < 0) throw std::invalid_argument("certify_window: n_max must be >= 0");
    if (n_max > (std::numeric_limits<std::int64_t>::max() - 1) / 2)
        throw std::invalid_argument("certify_window: window too large");

    WindowReport report;
    report.construction = std::string(to_string(run.config.construction));
    report.n_max = n_max;
    report.primality = PrimalityMode{run.config.mr_rounds};
    for (const auto& p : run.processed_primes) report.product_of_primes *= p;

    const auto tag = run.config.construction;
    if (tag == ConstructionTag::powers_primroot || tag == ConstructionTag::direct_crt) {
        const Nat radius = report.product_of_primes - 1;
        report.guaranteed_radius = radius < n_max ? static_cast<std::int64_t>(radius.get_si()) : n_max;
    }

    std::unordered_map<std::int64_t, std::size_t> recorded;
    if (tag == ConstructionTag::offset_blocked) {
        for (const auto& b : run.blocked_offsets) recorded.emplace(b.offset, b.index);
    }

    const BlockingFinder finder(run.set, run.processed_primes, report.primality);
    const auto& set = run.set;
    const PrimalityMode mode = report.primality;

    auto certify_one = [&](std::int64_t n) -> std::optional<BlockingCertificate> {
        if (set.empty()) return std::nullopt;
        std::vector<BlockingCertificate> candidates;
        if (tag == ConstructionTag::offset_blocked) {
            if (auto it = recorded.find(n); it != recorded.end()) {
                if (auto ev = non_prime_evidence(set, it->second, n, mode)) {
                    const bool exact = ev->reason != NonPrimeReason::probable_composite;
                    candidates.push_back({n, std::move(*ev), exact});
                }
            }
            // The smallest member lands on a value <= 1.
            if (auto v = set[0].value(); v && translated_value(*v, n) <= 1)
                candidates.push_back({n, NonPrimeMember{0, NonPrimeReason::unit_or_nonpositive, std::nullopt}, true});
        }
        if (auto found = finder.find(n)) candidates.push_back(std::move(*found));
        for (auto& c : candidates) {
            if (verify_certificate(set, c, mode)) return std::move(c);
        }
        return std::nullopt;
    };

    const std::size_t total = report.window_size();
    std::vector<std::optional<BlockingCertificate>> results(total);
    unsigned workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, total));
    if (workers <= 1) {
        for (std::size_t i = 0; i < total; ++i) results[i] = certify_one(static_cast<std::int64_t>(i) - n_max);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (std::size_t i = w; i < total; i += workers)
                    results[i] = certify_one(static_cast<std::int64_t>(i) - n_max);
            });
        }
    }

    for (std::size_t i = 0; i < total; ++i) {
        if (results[i]) {
            report.certificates.push_back(std::move(*results[i]));
        } else {
            report.uncertified.push_back(static_cast<std::int64_t>(i) - n_max);
        }
    }
    return report;
}

CoverageCertificate coverage_certificate(std::span<const Element> elements, const Nat& p, CoverageMode mode,
                                         unsigned min_copies) {
    const ResidueProfile profile = residue_profile(elements, p);
    const std::string label = std::string(to_string(mode)) + " mod " + p.get_str();

    if (mode == CoverageMode::double_cover) {
        if (const auto zero = profile.count(Nat(0)); zero > 0)
            throw CoverageError(p, Nat(0), zero,
                                label + ": class 0 holds " + std::to_string(zero) + " members, expected none");
        std::optional<Nat> offending;
        std::size_t offending_count = 0;
        if (auto empty = profile.first_empty_class(Nat(1))) offending = *empty;
        for (const auto& [r, members] : profile.classes()) {
            if (offending && r >= *offending) break;
            if (members.size() < min_copies) {
                offending = r;
                offending_count = members.size();
                break;
            }
        }
        if (offending)
            throw CoverageError(p, *offending, offending_count,
                                label + ": class " + offending->get_str() + " holds " +
                                    std::to_string(offending_count) + " members, expected at least " +
                                    std::to_string(min_copies));
    } else {
        for (const auto& [r, members] : profile.classes()) {
            if (members.size() == 1)
                throw CoverageError(p, r, 1, label + ": class " + r.get_str() + " holds exactly one member");
        }
    }
    return CoverageCertificate{p, mode, profile.classes()};
}

CoverageCertificate coverage_certificate(const GrowingSet& set, const Nat& p, CoverageMode mode, unsigned min_copies) {
    return coverage_certificate(set.elements(), p, mode, min_copies);
}

std::optional<CoverageMode> coverage_mode_for(ConstructionTag tag) {
    switch (tag) {
        case ConstructionTag::powers_primroot:
        case ConstructionTag::direct_crt: return CoverageMode::double_cover;
        case ConstructionTag::powers_subgroup: return CoverageMode::no_singleton;
        case ConstructionTag::offset_blocked: return std::nullopt;
    }
    return std::nullopt;
}

}  // namespace admiss
