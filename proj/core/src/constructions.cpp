#include "admiss/constructions.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace admiss {

namespace {

Nat max_of(const Nat& a, const Nat& b) { return a < b ? b : a; }

Nat as_nat(std::size_t v) { return Nat(static_cast<unsigned long>(v)); }

bool limit_reached(const ConstructionRun& run) {
    return run.config.element_limit && run.set.size() >= *run.config.element_limit;
}

// Greedy over powers of one base. Exponents start at 1 and strictly increase;
// the class of base^k modulo p is indexed by j = k mod ord_p(base).
class PowerGreedy {
public:
    explicit PowerGreedy(ConstructionRun& run) : run_(run), base_(run.config.base) {}

    // Tops up every class j in [0, order) to `copies` members, visiting j in
    // ascending order. Returns false if the element limit interrupted it.
    bool cover(const Nat& p, const Nat& order) {
        std::map<Nat, unsigned> have;
        for (const auto& e : run_.set.elements()) ++have[mod_floor(e.power().exponent, order)];

        for (Nat j = 0; j < order; ++j) {
            const Nat residue = mod_pow(base_, j, p);
            const auto it = have.find(j);
            const unsigned existing = it == have.end() ? 0 : it->second;
            for (unsigned copy = existing + 1; copy <= run_.config.copies; ++copy) {
                if (limit_reached(run_)) {
                    run_.truncated = true;
                    return false;
                }
                const std::size_t m = run_.set.size() + 1;
                Nat lo = max_of(last_exponent_ + 1, run_.config.budget.min_exponent(base_, m));
                const Nat k = lo + mod_floor(j - lo, order);
                run_.set.append(Element::of_power(base_, k), Cover{p, residue, copy});
                last_exponent_ = k;
            }
        }
        run_.processed_primes.push_back(p);
        return true;
    }

private:
    ConstructionRun& run_;
    const Nat& base_;
    Nat last_exponent_ = 0;
};

// Shared machinery for the constructions that place explicit integers while
// keeping one class per prime empty.
class ReservingScan {
public:
    explicit ReservingScan(ConstructionRun& run) : run_(run) {}

    // Every prime q <= m gets a reserved class before the m-th element goes
    // in; q > m - 1 = |set| guarantees a free class exists.
    void reserve_through(std::size_t m) {
        const Nat bound = as_nat(m);
        while (next_unreserved_ <= bound) {
            if (!run_.reservations.contains(next_unreserved_))
                reserve_residue(run_.reservations, run_.set, next_unreserved_);
            next_unreserved_ = next_prime(next_unreserved_);
        }
    }

    Nat lower_bound(std::size_t m) const {
        Nat lo;
        try {
            lo = run_.config.budget.threshold(m);
        } catch (const std::range_error& e) {
            throw ConstructionError(std::string("explicit element ") + std::to_string(m) + " out of reach: " + e.what());
        }
        if (lo < 1) lo = 1;
        if (!run_.set.empty()) lo = max_of(lo, *run_.set.back().value() + 1);
        return lo;
    }

    Nat max_element() const { return run_.set.empty() ? Nat(0) : *run_.set.back().value(); }

    // Smallest non-prime >= the sparsity bound avoiding reserved classes.
    Nat seed(std::size_t m) {
        reserve_through(m);
        Nat x = lower_bound(m);
        for (std::uint64_t i = 0; i < run_.config.scan_ceiling; ++i, ++x) {
            if (run_.reservations.admits(x) && !is_prime(x, run_.config.mr_rounds)) return x;
        }
        throw ConstructionError(diagnostic("no admissible non-prime seed", lower_bound(m)));
    }

    // Smallest x >= bound, x == r (mod p), avoiding reserved classes.
    Nat in_class(std::size_t m, const Nat& p, const Nat& r) {
        reserve_through(m);
        const Nat lo = lower_bound(m);
        Nat x = lo + mod_floor(r - lo, p);
        for (std::uint64_t i = 0; i < run_.config.scan_ceiling; ++i, x += p) {
            if (run_.reservations.admits(x)) return x;
        }
        throw ConstructionError(diagnostic("no admissible candidate in class " + r.get_str() + " mod " + p.get_str(), lo));
    }

    // Smallest d >= bound avoiding reserved classes with d + offset not prime.
    Nat blocker(std::size_t m, std::int64_t offset) {
        reserve_through(m);
        const Nat lo = lower_bound(m);
        const Nat shift(static_cast<long>(offset));
        Nat d = lo;
        for (std::uint64_t i = 0; i < run_.config.scan_ceiling; ++i, ++d) {
            if (run_.reservations.admits(d) && !is_prime(Nat(d + shift), run_.config.mr_rounds)) return d;
        }
        throw ConstructionError(diagnostic("no admissible witness for offset " + std::to_string(offset), lo));
    }

private:
    std::string diagnostic(const std::string& what, const Nat& from) const {
        std::ostringstream out;
        out << what << " within " << run_.config.scan_ceiling << " candidates from " << from.get_str()
            << " (element " << run_.set.size() + 1 << "); reserved classes:";
        std::size_t shown = 0;
        for (const auto& [q, r] : run_.reservations.entries()) {
            if (shown++ == 16) {
                out << " ...";
                break;
            }
            out << ' ' << r.get_str() << " mod " << q.get_str();
        }
        return out.str();
    }

    ConstructionRun& run_;
    Nat next_unreserved_ = 2;
};

ConstructionRun start(const ConstructionConfig& config, ConstructionTag expected) {
    if (config.construction != expected)
        throw std::invalid_argument(std::string("construction mismatch: config is ") +
                                    std::string(to_string(config.construction)) + ", expected " +
                                    std::string(to_string(expected)));
    validate(config);
    ConstructionRun run;
    run.config = config;
    return run;
}

// Walks primes ascending from 2 and yields those accepted by `wanted`, or the
// explicit prime list when one is configured.
template <typename Accept, typename Process>
void for_each_target_prime(ConstructionRun& run, Accept wanted, Process process, std::string_view what) {
    const auto& config = run.config;
    if (!config.prime_list.empty()) {
        for (const auto& p : config.prime_list) {
            if (!wanted(p))
                throw ConstructionError("prime " + p.get_str() + " is not usable: " + std::string(what));
            if (!process(p)) return;
        }
        return;
    }
    Nat p = 1;
    const Nat ceiling(static_cast<unsigned long>(config.prime_search_ceiling));
    while (run.processed_primes.size() < config.prime_quota) {
        p = next_prime(p);
        if (p > ceiling) {
            throw ConstructionError("found only " + std::to_string(run.processed_primes.size()) + " of " +
                                    std::to_string(config.prime_quota) + " primes (" + std::string(what) +
                                    ") below the search ceiling " + ceiling.get_str());
        }
        if (wanted(p) && !process(p)) return;
    }
}

}  // namespace

std::string_view to_string(ConstructionTag tag) {
    switch (tag) {
        case ConstructionTag::powers_primroot: return "powers-primroot";
        case ConstructionTag::direct_crt: return "direct-crt";
        case ConstructionTag::powers_subgroup: return "powers-subgroup";
        case ConstructionTag::offset_blocked: return "offset-blocked";
    }
    return "unknown";
}

std::optional<ConstructionTag> parse_construction_tag(std::string_view text) {
    for (auto tag : {ConstructionTag::powers_primroot, ConstructionTag::direct_crt, ConstructionTag::powers_subgroup,
                     ConstructionTag::offset_blocked}) {
        if (to_string(tag) == text) return tag;
    }
    return std::nullopt;
}

bool is_power_construction(ConstructionTag tag) {
    return tag == ConstructionTag::powers_primroot || tag == ConstructionTag::powers_subgroup;
}

void validate(const ConstructionConfig& config) {
    if (config.copies < 2) throw std::invalid_argument("copies must be >= 2");
    if (config.scan_ceiling < 1) throw std::invalid_argument("scan ceiling must be >= 1");
    if (config.mr_rounds < 1) throw std::invalid_argument("Miller-Rabin rounds must be >= 1");
    const bool power = is_power_construction(config.construction);
    if (power && config.base < 2) throw std::invalid_argument("base must be >= 2 for power constructions");
    if (!power && !config.prime_list.empty())
        throw std::invalid_argument("an explicit prime list is only meaningful for power constructions");
    for (std::size_t i = 0; i < config.prime_list.size(); ++i) {
        if (!is_prime(config.prime_list[i]))
            throw std::invalid_argument("prime list entry " + config.prime_list[i].get_str() + " is not prime");
        if (i > 0 && config.prime_list[i] <= config.prime_list[i - 1])
            throw std::invalid_argument("prime list must be strictly increasing");
    }
}

ConstructionRun construct(const ConstructionConfig& config) {
    switch (config.construction) {
        case ConstructionTag::powers_primroot: return construct_powers_primroot(config);
        case ConstructionTag::direct_crt: return construct_direct_crt(config);
        case ConstructionTag::powers_subgroup: return construct_powers_subgroup(config);
        case ConstructionTag::offset_blocked: return construct_offset_blocked(config);
    }
    throw std::invalid_argument("unknown construction");
}

ConstructionRun construct_powers_primroot(const ConstructionConfig& config) {
    ConstructionRun run = start(config, ConstructionTag::powers_primroot);
    PowerGreedy greedy(run);
    const Nat& a = run.config.base;
    for_each_target_prime(
        run, [&](const Nat& p) { return is_primitive_root(a, p); },
        [&](const Nat& p) { return greedy.cover(p, p - 1); }, "needs " + a.get_str() + " as a primitive root");
    return run;
}

ConstructionRun construct_powers_subgroup(const ConstructionConfig& config) {
    ConstructionRun run = start(config, ConstructionTag::powers_subgroup);
    PowerGreedy greedy(run);
    const Nat& c = run.config.base;
    for_each_target_prime(
        run, [&](const Nat& p) { return mod_floor(c, p) != 0; },
        [&](const Nat& p) { return greedy.cover(p, multiplicative_order(c, p)); },
        "must not divide " + c.get_str());
    return run;
}

ConstructionRun construct_direct_crt(const ConstructionConfig& config) {
    ConstructionRun run = start(config, ConstructionTag::direct_crt);
    if (limit_reached(run)) {
        run.truncated = run.config.prime_quota > 0;
        return run;
    }
    ReservingScan scan(run);
    run.set.append(Element::of_value(scan.seed(1)), SeedComposite{});

    for (std::size_t i = 0; i < run.config.prime_quota; ++i) {
        const Nat p = next_prime(scan.max_element(), run.config.mr_rounds);
        // Every member is below p and positive, so class 0 is free.
        if (reserve_residue(run.reservations, run.set, p) != 0)
            throw std::logic_error("direct-crt: class 0 mod " + p.get_str() + " was not free");
        for (Nat r = 1; r < p; ++r) {
            for (unsigned copy = 1; copy <= run.config.copies; ++copy) {
                if (limit_reached(run)) {
                    run.truncated = true;
                    return run;
                }
                const std::size_t m = run.set.size() + 1;
                run.set.append(Element::of_value(scan.in_class(m, p, r)), Cover{p, r, copy});
            }
        }
        run.processed_primes.push_back(p);
    }
    return run;
}

ConstructionRun construct_offset_blocked(const ConstructionConfig& config) {
    ConstructionRun run = start(config, ConstructionTag::offset_blocked);
    if (limit_reached(run)) {
        run.truncated = true;
        return run;
    }
    ReservingScan scan(run);
    const Nat seed = scan.seed(1);
    run.set.append(Element::of_value(seed), SeedComposite{});
    run.blocked_offsets.push_back({0, 0});

    // Offsets below 2 - d_0 need no witness: d_0 + n <= 1.
    constexpr long kMaxSeed = 1L << 62;
    if (seed > kMaxSeed)
        throw ConstructionError("seed " + seed.get_str() + " leaves too many negative offsets to block");
    std::vector<std::int64_t> offsets;
    for (std::int64_t n = 2 - static_cast<std::int64_t>(seed.get_si()); n < 0; ++n) offsets.push_back(n);
    for (std::size_t n = 1; n <= run.config.offset_quota; ++n) offsets.push_back(static_cast<std::int64_t>(n));

    for (auto n : offsets) {
        if (limit_reached(run)) {
            run.truncated = true;
            return run;
        }
        const std::size_t m = run.set.size() + 1;
        run.set.append(Element::of_value(scan.blocker(m, n)), Blocker{n});
        run.blocked_offsets.push_back({n, run.set.size() - 1});
    }
    return run;
}

}  // namespace admiss
