#include "admiss/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "admiss/certify.hpp"
#include "admiss/report_io.hpp"
#include "admiss/set_io.hpp"
#include "admiss/verify.hpp"

namespace admiss::cli {

namespace {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Nat parse_nat(const std::string& text, const std::string& flag) {
    Nat n;
    if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos || n.set_str(text, 10) != 0)
        throw UsageError(flag + ": expected a natural number, got '" + text + "'");
    return n;
}

std::vector<Nat> parse_nat_list(const std::string& text, const std::string& flag) {
    std::vector<Nat> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_nat(item, flag));
    return out;
}

std::optional<std::string> timestamp() {
    if (seedless()) return std::nullopt;
    return utc_timestamp();
}

std::string bit_length(const Element& e) {
    if (auto v = e.value()) return std::to_string(v->get_str(2).size());
    std::ostringstream s;
    s << "~" << std::llround(e.log2()) + 1;
    return s.str();
}

struct GenOptions {
    std::string construction = "powers-primroot";
    std::string base;
    std::string budget = "power:2";
    std::size_t primes = 0;
    std::string prime_list;
    unsigned copies = 2;
    std::size_t offsets = 0;
    std::uint64_t scan_ceiling = 1'000'000;
    std::uint64_t prime_search_ceiling = 1'000'000;
    std::size_t limit = 0;
    unsigned mr_rounds = kDefaultMillerRabinRounds;
    std::string out;
};

struct SetOptions {
    std::string set;
    std::string report;
    std::string out;
    std::int64_t nmax = 0;
    unsigned threads = 0;
};

struct PrimrootOptions {
    std::string base = "2";
    std::uint64_t bound = 0;
};

int run_gen(const GenOptions& o, const CLI::App& cmd, std::ostream& out) {
    ConstructionConfig config;
    const auto tag = parse_construction_tag(o.construction);
    if (!tag) throw UsageError("--construction: unknown construction '" + o.construction + "'");
    config.construction = *tag;
    const bool power = is_power_construction(*tag);
    if (cmd.count("--base")) {
        if (!power) throw UsageError("--base applies only to powers-primroot and powers-subgroup");
        config.base = parse_nat(o.base, "--base");
    }
    if (cmd.count("--prime-list")) {
        if (!power) throw UsageError("--prime-list applies only to powers-primroot and powers-subgroup");
        config.prime_list = parse_nat_list(o.prime_list, "--prime-list");
    }
    if (cmd.count("--offsets") && *tag != ConstructionTag::offset_blocked)
        throw UsageError("--offsets applies only to offset-blocked");
    if (o.copies < 2) throw UsageError("--copies must be >= 2");
    try {
        config.budget = SparsityBudget::parse(o.budget);
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("--budget: ") + e.what());
    }
    config.prime_quota = o.primes;
    config.copies = o.copies;
    config.offset_quota = o.offsets;
    config.scan_ceiling = o.scan_ceiling;
    config.prime_search_ceiling = o.prime_search_ceiling;
    if (cmd.count("--limit")) config.element_limit = o.limit;
    config.mr_rounds = o.mr_rounds;
    try {
        validate(config);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }

    const ConstructionRun run = construct(config);
    SetFile file = to_set_file(run);
    file.generated_at = timestamp();
    save_set_file(o.out, file);

    out << "construction: " << to_string(config.construction) << '\n';
    out << "budget: " << config.budget.literal() << '\n';
    out << "elements: " << run.set.size() << '\n';
    out << "processed primes:";
    for (const auto& p : run.processed_primes) out << ' ' << p.get_str();
    if (run.processed_primes.empty()) out << " none";
    out << '\n';
    if (*tag == ConstructionTag::offset_blocked) out << "blocked offsets: " << run.blocked_offsets.size() << '\n';
    out << "max element bits: " << (run.set.empty() ? std::string("0") : bit_length(run.set.back())) << '\n';
    if (run.truncated) out << "truncated: element limit reached\n";
    out << "wrote " << o.out << '\n';
    return kExitOk;
}

int check_report(const SetOptions& o, const SetFile& file, std::ostream& out) {
    std::ifstream in(o.report, std::ios::binary);
    if (!in) throw SetFileError("cannot open '" + o.report + "'");
    const auto certificates = read_report_certificates(in);
    const ConstructionRun run = to_run(file);
    const PrimalityMode mode{file.config.mr_rounds};
    for (const auto& c : certificates) {
        if (!verify_certificate(run.set, c, mode)) {
            out << "FAIL certificate: offset " << c.offset << " is not blocked by its evidence\n";
            return kExitFailed;
        }
    }
    out << "ok: " << certificates.size() << " certificates re-checked\n";
    return kExitOk;
}

int run_verify(const SetOptions& o, std::ostream& out) {
    const SetFile file = load_set_file(o.set);
    const auto report = verify_set_file(file);
    if (!report.ok()) {
        const auto& f = *report.failure;
        out << "FAIL " << f.check << ": " << f.message;
        if (f.prime) {
            out << " (prime " << f.prime->get_str();
            if (f.residue) out << ", class " << f.residue->get_str();
            out << ')';
        }
        out << '\n';
        return kExitFailed;
    }
    out << "ok:";
    for (const auto& name : report.passed) out << ' ' << name;
    out << " (" << file.elements.size() << " elements)\n";
    if (!o.report.empty()) return check_report(o, file, out);
    return kExitOk;
}

int run_analyze(const SetOptions& o, std::ostream& out) {
    const SetFile file = load_set_file(o.set);
    const ConstructionRun run = to_run(file);
    const auto mode = coverage_mode_for(file.config.construction);
    int status = kExitOk;
    for (const auto& p : file.processed_primes) {
        const auto profile = residue_profile(run.set, p);
        nlohmann::json classes = nlohmann::json::object();
        for (const auto& [r, members] : profile.classes()) classes[r.get_str()] = members.size();
        nlohmann::json line = {{"prime", p.get_str()},
                               {"classes", std::move(classes)},
                               {"occupied_classes", profile.occupied_classes()}};
        if (mode) {
            line["mode"] = std::string(to_string(*mode));
            try {
                coverage_certificate(run.set, p, *mode, file.config.copies);
                line["ok"] = true;
            } catch (const CoverageError& e) {
                line["ok"] = false;
                line["error"] = e.what();
                status = kExitFailed;
            }
        }
        out << line.dump() << '\n';
    }
    return status;
}

int run_certify(const SetOptions& o, std::ostream& out) {
    const SetFile file = load_set_file(o.set);
    const ConstructionRun run = to_run(file);
    const WindowReport report = certify_window(run, o.nmax, o.threads);
    if (!o.out.empty()) {
        std::ofstream f(o.out, std::ios::binary);
        if (!f) throw SetFileError("cannot open '" + o.out + "' for writing");
        write_report(f, report, run.set, timestamp());
        if (!f) throw SetFileError("failed writing '" + o.out + "'");
    }
    out << "certified " << report.certificates.size() << '/' << report.window_size() << " offsets in [" << -o.nmax
        << ", " << o.nmax << "]\n";
    out << "product of processed primes: " << report.product_of_primes.get_str() << '\n';
    if (!report.uncertified.empty()) {
        out << "uncertified:";
        for (auto n : report.uncertified) out << ' ' << n;
        out << '\n';
        return kExitFailed;
    }
    return kExitOk;
}

int run_primroots(const PrimrootOptions& o, std::ostream& out) {
    const Nat a = parse_nat(o.base, "--base");
    if (a < 2) throw UsageError("--base must be >= 2");
    const auto found = primes_with_primitive_root(a, o.bound);
    const auto total = primes_up_to(o.bound).size();
    for (std::size_t i = 0; i < found.size(); ++i) out << (i ? " " : "") << found[i].get_str();
    out << '\n';
    out << "density " << found.size() << '/' << total << " = ";
    if (total == 0) {
        out << "n/a\n";
    } else {
        out << std::fixed << std::setprecision(6) << static_cast<double>(found.size()) / static_cast<double>(total)
            << '\n';
    }
    return kExitOk;
}

}  // namespace

bool seedless() {
    const char* v = std::getenv("ADMISS_SEEDLESS");
    return v && std::string(v) == "1";
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Sparse admissible sets: generation, verification and translation certificates", "admiss"};
    app.require_subcommand(1);

    GenOptions gen_opts;
    auto* gen = app.add_subcommand("gen", "Generate a set and write it as JSON Lines");
    gen->add_option("--construction", gen_opts.construction,
                    "powers-primroot | direct-crt | powers-subgroup | offset-blocked")
        ->capture_default_str();
    gen->add_option("--base", gen_opts.base, "Base of the power constructions (default 2)");
    gen->add_option("--budget", gen_opts.budget, "power:b | poly:d | doubleexp:b | table:v1,v2,... | table:@file")
        ->capture_default_str();
    gen->add_option("--primes", gen_opts.primes, "Number of primes to process")->capture_default_str();
    gen->add_option("--prime-list", gen_opts.prime_list, "Explicit comma-separated primes (power constructions)");
    gen->add_option("--copies", gen_opts.copies, "Members per covered class (>= 2)")->capture_default_str();
    gen->add_option("--offsets", gen_opts.offsets, "Offsets to block (offset-blocked)")->capture_default_str();
    gen->add_option("--scan-ceiling", gen_opts.scan_ceiling, "Candidates examined per element")
        ->capture_default_str();
    gen->add_option("--prime-search-ceiling", gen_opts.prime_search_ceiling, "Largest prime tried")
        ->capture_default_str();
    gen->add_option("--limit", gen_opts.limit, "Stop after this many elements");
    gen->add_option("--mr-rounds", gen_opts.mr_rounds, "Miller-Rabin rounds above 2^64")->capture_default_str();
    gen->add_option("--out", gen_opts.out, "Output set file")->required();

    SetOptions verify_opts;
    auto* verify = app.add_subcommand("verify", "Re-check a set file from its contents alone");
    verify->add_option("--set,set", verify_opts.set, "Set file")->required();
    verify->add_option("--report", verify_opts.report, "Also re-check the certificates in this report");

    SetOptions analyze_opts;
    auto* analyze = app.add_subcommand("analyze", "Residue class counts for every processed prime");
    analyze->add_option("--set,set", analyze_opts.set, "Set file")->required();

    SetOptions certify_opts;
    auto* certify = app.add_subcommand("certify", "Certify every offset in [-nmax, nmax]");
    certify->add_option("--set,set", certify_opts.set, "Set file")->required();
    certify->add_option("--nmax", certify_opts.nmax, "Window radius")->required()->check(CLI::NonNegativeNumber);
    certify->add_option("--out", certify_opts.out, "Write the certificate report here");
    certify->add_option("--threads", certify_opts.threads, "Worker threads (0 = hardware concurrency)");

    PrimrootOptions primroot_opts;
    auto* primroots = app.add_subcommand("primroots", "Primes up to a bound having a given primitive root");
    primroots->add_option("--base", primroot_opts.base, "Candidate primitive root")->capture_default_str();
    primroots->add_option("--prime-bound,--bound", primroot_opts.bound, "Largest prime considered")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*gen) return run_gen(gen_opts, *gen, out);
        if (*verify) return run_verify(verify_opts, out);
        if (*analyze) return run_analyze(analyze_opts, out);
        if (*certify) return run_certify(certify_opts, out);
        if (*primroots) return run_primroots(primroot_opts, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const SetFileError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ConstructionError& e) {
        err << "construction failed: " << e.what() << '\n';
        return kExitFailed;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace admiss::cli
