#pragma once

#include <string>

#include <json.hpp>

#include "admiss/element.hpp"
#include "admiss/set_io.hpp"

namespace admiss::detail {

inline const nlohmann::json& require(const nlohmann::json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw SetFileError(std::string("missing field '") + key + "'");
    return j.at(key);
}

/// Unsigned JSON integer or decimal string.
inline Nat read_nat(const nlohmann::json& j) {
    if (j.is_number_unsigned()) return Nat(static_cast<unsigned long>(j.get<std::uint64_t>()));
    if (j.is_string()) {
        const auto& s = j.get_ref<const std::string&>();
        if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
            throw SetFileError("'" + s + "' is not a decimal natural number");
        return Nat(s);
    }
    throw SetFileError("expected a natural number, got " + j.dump());
}

/// {m, value} or {m, base, exponent[, value]}.
inline nlohmann::json element_to_json(const Element& e, std::size_t m) {
    nlohmann::json j = {{"m", m}};
    if (e.is_power()) {
        j["base"] = e.power().base.get_str();
        j["exponent"] = e.power().exponent.get_str();
    } else {
        j["value"] = e.value_form().get_str();
    }
    return j;
}

}  // namespace admiss::detail
