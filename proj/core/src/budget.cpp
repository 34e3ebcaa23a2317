#include "admiss/budget.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace admiss {

namespace {

Nat parse_nat(std::string_view text, std::string_view what) {
    if (text.empty() || text.find_first_not_of("0123456789") != std::string_view::npos)
        throw std::invalid_argument("budget: " + std::string(what) + " '" + std::string(text) + "' is not a natural number");
    return Nat(std::string(text));
}

std::vector<Nat> read_table_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("budget: cannot open table file '" + path + "'");
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument("budget: table file '" + path + "' is not valid JSON: " + e.what());
    }
    if (!doc.is_array()) throw std::invalid_argument("budget: table file must hold a JSON array");
    std::vector<Nat> values;
    for (const auto& item : doc) {
        if (item.is_number_unsigned()) {
            values.emplace_back(static_cast<unsigned long>(item.get<std::uint64_t>()));
        } else if (item.is_string()) {
            values.push_back(parse_nat(item.get<std::string>(), "table entry"));
        } else {
            throw std::invalid_argument("budget: table entries must be non-negative integers or decimal strings");
        }
    }
    return values;
}

std::vector<Nat> parse_inline_table(std::string_view text) {
    std::vector<Nat> values;
    while (!text.empty()) {
        const auto comma = text.find(',');
        values.push_back(parse_nat(text.substr(0, comma), "table entry"));
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    return values;
}

}  // namespace

std::string_view to_string(BudgetKind kind) {
    switch (kind) {
        case BudgetKind::power: return "power";
        case BudgetKind::polynomial: return "poly";
        case BudgetKind::doubly_exponential: return "doubleexp";
        case BudgetKind::table: return "table";
    }
    return "unknown";
}

SparsityBudget::SparsityBudget(BudgetKind kind, Nat parameter, std::vector<Nat> table)
    : kind_(kind), parameter_(std::move(parameter)), table_(std::move(table)) {}

SparsityBudget SparsityBudget::power(Nat base) {
    if (base < 2) throw std::invalid_argument("budget: power base must be >= 2");
    return {BudgetKind::power, std::move(base), {}};
}

SparsityBudget SparsityBudget::polynomial(unsigned long degree) {
    if (degree < 1) throw std::invalid_argument("budget: polynomial degree must be >= 1");
    return {BudgetKind::polynomial, Nat(degree), {}};
}

SparsityBudget SparsityBudget::doubly_exponential(Nat base) {
    if (base < 2) throw std::invalid_argument("budget: doubly-exponential base must be >= 2");
    return {BudgetKind::doubly_exponential, std::move(base), {}};
}

SparsityBudget SparsityBudget::table(std::vector<Nat> thresholds) {
    if (thresholds.empty()) throw std::invalid_argument("budget: table must not be empty");
    if (thresholds.front() < 1) throw std::invalid_argument("budget: table thresholds must be >= 1");
    for (std::size_t i = 1; i < thresholds.size(); ++i) {
        if (thresholds[i] <= thresholds[i - 1])
            throw std::invalid_argument("budget: table thresholds must be strictly increasing");
    }
    return {BudgetKind::table, Nat(0), std::move(thresholds)};
}

SparsityBudget SparsityBudget::parse(std::string_view literal) {
    const auto colon = literal.find(':');
    if (colon == std::string_view::npos)
        throw std::invalid_argument("budget: expected <kind>:<parameter>, got '" + std::string(literal) + "'");
    const auto kind = literal.substr(0, colon);
    const auto arg = literal.substr(colon + 1);

    if (kind == "power") return power(parse_nat(arg, "power base"));
    if (kind == "poly") {
        const Nat degree = parse_nat(arg, "polynomial degree");
        if (!degree.fits_ulong_p()) throw std::invalid_argument("budget: polynomial degree too large");
        return polynomial(degree.get_ui());
    }
    if (kind == "doubleexp") return doubly_exponential(parse_nat(arg, "doubly-exponential base"));
    if (kind == "table") {
        if (!arg.empty() && arg.front() == '@') return table(read_table_file(std::string(arg.substr(1))));
        return table(parse_inline_table(arg));
    }
    throw std::invalid_argument("budget: unknown kind '" + std::string(kind) + "'");
}

std::string SparsityBudget::literal() const {
    std::string out(to_string(kind_));
    out += ':';
    if (kind_ != BudgetKind::table) return out + parameter_.get_str();
    for (std::size_t i = 0; i < table_.size(); ++i) {
        if (i > 0) out += ',';
        out += table_[i].get_str();
    }
    return out;
}

Power SparsityBudget::threshold_power(std::size_t m) const {
    if (m < 1) throw std::invalid_argument("budget: element index m must be >= 1");
    const Nat index(static_cast<unsigned long>(m));
    switch (kind_) {
        case BudgetKind::power: return {parameter_, index};
        case BudgetKind::polynomial: return {index, parameter_};
        case BudgetKind::doubly_exponential: {
            Nat inner;
            mpz_pow_ui(inner.get_mpz_t(), parameter_.get_mpz_t(), m);
            return {parameter_, inner};
        }
        case BudgetKind::table: return {threshold(m), Nat(1)};
    }
    throw std::logic_error("budget: unhandled kind");
}

Nat SparsityBudget::threshold(std::size_t m) const {
    if (m < 1) throw std::invalid_argument("budget: element index m must be >= 1");
    if (kind_ == BudgetKind::table) {
        if (m <= table_.size()) return table_[m - 1];
        const std::size_t doublings = m - table_.size();
        if (doublings > kMaxMaterializeBits) throw std::range_error("budget: T(" + std::to_string(m) + ") too large");
        Nat out;
        mpz_mul_2exp(out.get_mpz_t(), table_.back().get_mpz_t(), doublings);
        return out;
    }
    const Power p = threshold_power(m);
    if (auto value = materialize(p)) return *value;
    throw std::range_error("budget: T(" + std::to_string(m) + ") = " + p.base.get_str() + "^" + p.exponent.get_str() +
                           " is too large to materialize");
}

Nat SparsityBudget::min_exponent(const Nat& base, std::size_t m) const {
    if (kind_ == BudgetKind::table) return min_exponent_reaching(base, threshold(m));
    return min_exponent_reaching(base, threshold_power(m));
}

bool SparsityBudget::admits(const Nat& value, std::size_t m) const {
    return admits(Power{value, Nat(1)}, m);
}

bool SparsityBudget::admits(const Power& value, std::size_t m) const {
    return compare(value, threshold_power(m)) >= 0;
}

bool check_sparsity(std::span<const Nat> elements, const SparsityBudget& budget) {
    for (std::size_t i = 0; i < elements.size(); ++i) {
        if (!budget.admits(elements[i], i + 1)) return false;
    }
    return true;
}

}  // namespace admiss
