#include "admiss/set_io.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "json_util.hpp"

namespace admiss {

using nlohmann::json;

namespace {

json provenance_to_json(const Provenance& p) {
    return std::visit(
        [](const auto& v) -> json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, SeedComposite>) {
                return {{"kind", "seed-composite"}};
            } else if constexpr (std::is_same_v<T, Cover>) {
                return {{"kind", "cover"}, {"prime", v.prime.get_str()}, {"class", v.residue.get_str()}, {"copy", v.copy}};
            } else {
                return {{"kind", "blocker"}, {"offset", v.offset}};
            }
        },
        p);
}

Provenance provenance_from_json(const json& j) {
    const auto kind = detail::require(j, "kind").get<std::string>();
    if (kind == "seed-composite") return SeedComposite{};
    if (kind == "cover")
        return Cover{detail::read_nat(detail::require(j, "prime")), detail::read_nat(detail::require(j, "class")),
                     detail::require(j, "copy").get<unsigned>()};
    if (kind == "blocker") return Blocker{detail::require(j, "offset").get<std::int64_t>()};
    throw SetFileError("unknown provenance kind '" + kind + "'");
}

json budget_to_json(const SparsityBudget& budget) {
    json j = {{"kind", std::string(to_string(budget.kind()))}, {"literal", budget.literal()}};
    if (budget.kind() == BudgetKind::table) {
        json values = json::array();
        for (const auto& t : budget.table_values()) values.push_back(t.get_str());
        j["thresholds"] = std::move(values);
        j["extension"] = "geometric-doubling";
    }
    return j;
}

SparsityBudget budget_from_json(const json& j) {
    const auto kind = detail::require(j, "kind").get<std::string>();
    if (kind == "table") {
        std::vector<Nat> values;
        for (const auto& t : detail::require(j, "thresholds")) values.push_back(detail::read_nat(t));
        return SparsityBudget::table(std::move(values));
    }
    return SparsityBudget::parse(detail::require(j, "literal").get<std::string>());
}

json metadata_to_json(const SetFile& file) {
    const auto& c = file.config;
    json primes = json::array();
    for (const auto& p : file.processed_primes) primes.push_back(p.get_str());
    json prime_list = json::array();
    for (const auto& p : c.prime_list) prime_list.push_back(p.get_str());
    json reservations = json::array();
    for (const auto& [q, r] : file.reservations.entries())
        reservations.push_back({{"prime", q.get_str()}, {"residue", r.get_str()}});
    json blocked = json::array();
    for (const auto& b : file.blocked_offsets) blocked.push_back({{"offset", b.offset}, {"m", b.index + 1}});

    json params = {
        {"base", c.base.get_str()},
        {"copies", c.copies},
        {"prime_quota", c.prime_quota},
        {"prime_list", std::move(prime_list)},
        {"offset_quota", c.offset_quota},
        {"scan_ceiling", c.scan_ceiling},
        {"prime_search_ceiling", c.prime_search_ceiling},
        {"element_limit", c.element_limit ? json(*c.element_limit) : json(nullptr)},
        {"mr_rounds", c.mr_rounds},
        {"exponent_origin", 1},
        {"processed_primes", std::move(primes)},
        {"reservations", std::move(reservations)},
        {"blocked_offsets", std::move(blocked)},
        {"truncated", file.truncated},
    };
    json meta = {
        {"format_version", file.format_version},
        {"construction_tag", std::string(to_string(c.construction))},
        {"params", std::move(params)},
        {"budget", budget_to_json(c.budget)},
        {"primality_mode", file.primality_mode},
    };
    if (file.generated_at) meta["generated_at"] = *file.generated_at;
    return meta;
}

void metadata_from_json(const json& meta, SetFile& file) {
    file.format_version = detail::require(meta, "format_version").get<int>();
    if (file.format_version != kSetFormatVersion)
        throw SetFileError("unsupported format_version " + std::to_string(file.format_version));
    const auto tag_text = detail::require(meta, "construction_tag").get<std::string>();
    const auto tag = parse_construction_tag(tag_text);
    if (!tag) throw SetFileError("unknown construction_tag '" + tag_text + "'");

    auto& c = file.config;
    c.construction = *tag;
    c.budget = budget_from_json(detail::require(meta, "budget"));
    file.primality_mode = detail::require(meta, "primality_mode").get<std::string>();
    if (meta.contains("generated_at")) file.generated_at = meta["generated_at"].get<std::string>();

    const json& params = detail::require(meta, "params");
    c.base = detail::read_nat(detail::require(params, "base"));
    c.copies = detail::require(params, "copies").get<unsigned>();
    c.prime_quota = detail::require(params, "prime_quota").get<std::size_t>();
    c.offset_quota = detail::require(params, "offset_quota").get<std::size_t>();
    c.scan_ceiling = detail::require(params, "scan_ceiling").get<std::uint64_t>();
    c.prime_search_ceiling = detail::require(params, "prime_search_ceiling").get<std::uint64_t>();
    c.mr_rounds = detail::require(params, "mr_rounds").get<unsigned>();
    if (params.contains("element_limit") && !params["element_limit"].is_null())
        c.element_limit = params["element_limit"].get<std::size_t>();
    if (params.contains("prime_list")) {
        for (const auto& p : params["prime_list"]) c.prime_list.push_back(detail::read_nat(p));
    }
    if (const auto origin = detail::require(params, "exponent_origin").get<int>(); origin != 1)
        throw SetFileError("unsupported exponent_origin " + std::to_string(origin));

    for (const auto& p : detail::require(params, "processed_primes")) file.processed_primes.push_back(detail::read_nat(p));
    for (const auto& r : detail::require(params, "reservations")) {
        try {
            file.reservations.record(detail::read_nat(detail::require(r, "prime")),
                                     detail::read_nat(detail::require(r, "residue")));
        } catch (const std::invalid_argument& e) {
            throw SetFileError(std::string("bad reservation: ") + e.what());
        }
    }
    for (const auto& b : detail::require(params, "blocked_offsets")) {
        const auto m = detail::require(b, "m").get<std::size_t>();
        if (m < 1) throw SetFileError("blocked offset witness index m must be >= 1");
        file.blocked_offsets.push_back({detail::require(b, "offset").get<std::int64_t>(), m - 1});
    }
    file.truncated = detail::require(params, "truncated").get<bool>();
}

}  // namespace

SetFile to_set_file(const ConstructionRun& run) {
    SetFile file;
    file.config = run.config;
    file.processed_primes = run.processed_primes;
    file.reservations = run.reservations;
    file.blocked_offsets = run.blocked_offsets;
    file.truncated = run.truncated;
    file.primality_mode = PrimalityMode{run.config.mr_rounds}.describe();
    for (std::size_t i = 0; i < run.set.size(); ++i) {
        const Element& e = run.set[i];
        file.elements.push_back(e);
        file.provenance.push_back(run.set.provenance(i));
        file.stated_values.push_back(e.is_power() ? e.value(kInlineValueBits) : std::nullopt);
        file.declared_indices.push_back(i + 1);
    }
    return file;
}

ConstructionRun to_run(const SetFile& file) {
    ConstructionRun run;
    run.config = file.config;
    for (std::size_t i = 0; i < file.elements.size(); ++i) run.set.append(file.elements[i], file.provenance[i]);
    run.processed_primes = file.processed_primes;
    run.reservations = file.reservations;
    run.blocked_offsets = file.blocked_offsets;
    run.truncated = file.truncated;
    return run;
}

void write_set_file(std::ostream& out, const SetFile& file) {
    out << metadata_to_json(file).dump() << '\n';
    for (std::size_t i = 0; i < file.elements.size(); ++i) {
        json line = detail::element_to_json(file.elements[i], file.declared_indices[i]);
        if (file.elements[i].is_power() && file.stated_values[i]) line["value"] = file.stated_values[i]->get_str();
        line["provenance"] = provenance_to_json(file.provenance[i]);
        out << line.dump() << '\n';
    }
}

SetFile read_set_file(std::istream& in) {
    SetFile file;
    std::string line;
    std::size_t line_number = 0;
    bool have_metadata = false;
    while (std::getline(in, line)) {
        ++line_number;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            const json j = json::parse(line);
            if (!j.is_object()) throw SetFileError("expected a JSON object");
            if (!have_metadata) {
                metadata_from_json(j, file);
                have_metadata = true;
                continue;
            }
            const auto m = detail::require(j, "m").get<std::size_t>();
            std::optional<Nat> value;
            if (j.contains("value")) value = detail::read_nat(j["value"]);
            if (j.contains("base") != j.contains("exponent")) throw SetFileError("base and exponent must appear together");
            if (j.contains("base")) {
                file.elements.push_back(
                    Element::of_power(detail::read_nat(j["base"]), detail::read_nat(j["exponent"])));
                file.stated_values.push_back(value);
            } else {
                if (!value) throw SetFileError("element needs a value or base/exponent");
                file.elements.push_back(Element::of_value(*value));
                file.stated_values.push_back(std::nullopt);
            }
            file.provenance.push_back(provenance_from_json(detail::require(j, "provenance")));
            file.declared_indices.push_back(m);
        } catch (const std::exception& e) {
            throw SetFileError("line " + std::to_string(line_number) + ": " + e.what());
        }
    }
    if (!have_metadata) throw SetFileError("missing metadata line");
    return file;
}

void save_set_file(const std::filesystem::path& path, const SetFile& file) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw SetFileError("cannot open '" + path.string() + "' for writing");
    write_set_file(out, file);
    if (!out) throw SetFileError("failed writing '" + path.string() + "'");
}

SetFile load_set_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SetFileError("cannot open '" + path.string() + "'");
    return read_set_file(in);
}

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace admiss
