#include "admiss/element.hpp"

#include <stdexcept>

namespace admiss {

Element Element::of_value(Nat value) {
    if (value < 1) throw std::invalid_argument("element: values must be >= 1");
    return Element(std::move(value));
}

Element Element::of_power(Nat base, Nat exponent) {
    if (base < 1) throw std::invalid_argument("element: power base must be >= 1");
    if (exponent < 0) throw std::invalid_argument("element: power exponent must be >= 0");
    return Element(Power{std::move(base), std::move(exponent)});
}

Power Element::as_power() const {
    if (is_power()) return power();
    return {value_form(), Nat(1)};
}

Nat Element::residue(const Nat& modulus) const {
    if (is_power()) return mod_pow(power().base, power().exponent, modulus);
    return mod_floor(value_form(), modulus);
}

Nat Element::translated_residue(std::int64_t offset, const Nat& modulus) const {
    return mod_floor(residue(modulus) + Nat(static_cast<long>(offset)), modulus);
}

std::optional<Nat> Element::value(std::size_t max_bits) const {
    if (!is_power()) return value_form();
    return materialize(power(), max_bits);
}

double Element::log2() const { return log2_of(as_power()); }

std::string Element::describe(std::size_t max_bits) const {
    if (auto v = value(max_bits)) return v->get_str();
    return power().base.get_str() + "^" + power().exponent.get_str();
}

std::strong_ordering operator<=>(const Element& lhs, const Element& rhs) {
    return compare(lhs.as_power(), rhs.as_power());
}

}  // namespace admiss
