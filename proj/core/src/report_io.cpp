#include "admiss/report_io.hpp"

#include <istream>
#include <ostream>

#include <json.hpp>

#include "json_util.hpp"

namespace admiss {

using nlohmann::json;

namespace {

std::string certificate_mode(const BlockingCertificate& c, const PrimalityMode& mode) {
    return c.exact ? "exact" : "probabilistic: Miller-Rabin, " + std::to_string(mode.rounds) + " rounds";
}

json certificate_to_json(const BlockingCertificate& c, const GrowingSet& set, const PrimalityMode& mode) {
    json j = {{"offset", c.offset}, {"primality_mode", certificate_mode(c, mode)}};
    json witnesses = json::array();
    auto witness = [&](std::size_t i) {
        json w = detail::element_to_json(set[i], i + 1);
        if (set[i].is_power()) {
            if (auto v = set[i].value(kInlineValueBits)) w["value"] = v->get_str();
        }
        witnesses.push_back(std::move(w));
    };
    if (const auto* two = std::get_if<TwoInClass>(&c.evidence)) {
        j["evidence_type"] = "two-in-class";
        j["prime"] = two->prime.get_str();
        witness(two->first);
        witness(two->second);
    } else {
        const auto& member = std::get<NonPrimeMember>(c.evidence);
        j["evidence_type"] = "non-prime-member";
        j["reason"] = std::string(to_string(member.reason));
        if (member.factor) j["factor"] = member.factor->get_str();
        witness(member.index);
    }
    j["witnesses"] = std::move(witnesses);
    return j;
}

std::size_t witness_index(const json& w) {
    const auto m = detail::require(w, "m").get<std::size_t>();
    if (m < 1) throw SetFileError("witness index m must be >= 1");
    return m - 1;
}

}  // namespace

void write_report(std::ostream& out, const WindowReport& report, const GrowingSet& set,
                  const std::optional<std::string>& generated_at) {
    json summary = {
        {"construction_tag", report.construction},
        {"window", {-report.n_max, report.n_max}},
        {"window_size", report.window_size()},
        {"certified", report.certificates.size()},
        {"uncertified", report.uncertified},
        {"product_of_primes", report.product_of_primes.get_str()},
        {"guaranteed_radius", report.guaranteed_radius ? json(*report.guaranteed_radius) : json(nullptr)},
        {"primality_mode", report.primality.describe()},
    };
    if (generated_at) summary["generated_at"] = *generated_at;

    json certificates = json::array();
    for (const auto& c : report.certificates) certificates.push_back(certificate_to_json(c, set, report.primality));
    out << json{{"summary", std::move(summary)}, {"certificates", std::move(certificates)}}.dump(1) << '\n';
}

std::vector<BlockingCertificate> read_report_certificates(std::istream& in) {
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw SetFileError(std::string("report is not valid JSON: ") + e.what());
    }
    std::vector<BlockingCertificate> out;
    try {
        for (const auto& c : detail::require(doc, "certificates")) {
            BlockingCertificate cert;
            cert.offset = detail::require(c, "offset").get<std::int64_t>();
            cert.exact = detail::require(c, "primality_mode").get<std::string>() == "exact";
            const auto type = detail::require(c, "evidence_type").get<std::string>();
            const auto& witnesses = detail::require(c, "witnesses");
            if (type == "two-in-class") {
                if (witnesses.size() != 2) throw SetFileError("two-in-class needs exactly two witnesses");
                cert.evidence = TwoInClass{detail::read_nat(detail::require(c, "prime")), witness_index(witnesses[0]),
                                           witness_index(witnesses[1])};
            } else if (type == "non-prime-member") {
                if (witnesses.size() != 1) throw SetFileError("non-prime-member needs exactly one witness");
                NonPrimeMember member;
                member.index = witness_index(witnesses[0]);
                const auto reason = detail::require(c, "reason").get<std::string>();
                if (reason == "unit-or-nonpositive") {
                    member.reason = NonPrimeReason::unit_or_nonpositive;
                } else if (reason == "factor") {
                    member.reason = NonPrimeReason::factor;
                    member.factor = detail::read_nat(detail::require(c, "factor"));
                } else if (reason == "probable-composite") {
                    member.reason = NonPrimeReason::probable_composite;
                } else {
                    throw SetFileError("unknown non-prime reason '" + reason + "'");
                }
                cert.evidence = std::move(member);
            } else {
                throw SetFileError("unknown evidence_type '" + type + "'");
            }
            out.push_back(std::move(cert));
        }
    } catch (const json::exception& e) {
        throw SetFileError(std::string("malformed report: ") + e.what());
    }
    return out;
}

}  // namespace admiss
