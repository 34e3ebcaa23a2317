#include <gtest/gtest.h>

#include <map>

#include "admiss/verify.hpp"

using namespace admiss;

namespace {

SetFile generated(ConstructionTag tag, const char* budget, std::size_t primes = 3) {
    ConstructionConfig c;
    c.construction = tag;
    c.budget = SparsityBudget::parse(budget);
    c.prime_quota = primes;
    c.offset_quota = 10;
    c.element_limit = 20;
    return to_set_file(construct(c));
}

void erase_element(SetFile& file, std::size_t i) {
    file.elements.erase(file.elements.begin() + static_cast<long>(i));
    file.provenance.erase(file.provenance.begin() + static_cast<long>(i));
    file.stated_values.erase(file.stated_values.begin() + static_cast<long>(i));
    file.declared_indices.pop_back();
}

std::string failing_check(const SetFile& file) {
    const auto report = verify_set_file(file);
    return report.ok() ? "" : report.failure->check;
}

TEST(Verify, GeneratedFilesPass) {
    for (auto tag : {ConstructionTag::powers_primroot, ConstructionTag::direct_crt, ConstructionTag::powers_subgroup,
                     ConstructionTag::offset_blocked}) {
        for (const char* budget : {"power:2", "poly:2", "doubleexp:2"}) {
            const auto report = verify_set_file(generated(tag, budget));
            EXPECT_TRUE(report.ok()) << to_string(tag) << " " << budget << ": " << report.failure->message;
            EXPECT_EQ(report.passed.size(), 8u);
        }
    }
}

TEST(Verify, EmptyFilePasses) {
    EXPECT_TRUE(verify_set_file(generated(ConstructionTag::powers_primroot, "power:2", 0)).ok());
}

TEST(Verify, DeletedElementBreaksCoverage) {
    auto file = generated(ConstructionTag::powers_primroot, "power:2");
    erase_element(file, 4);
    // First processed prime, then smallest class, left with fewer than two members.
    std::optional<std::pair<unsigned long, unsigned long>> expected;
    for (const auto& p : file.processed_primes) {
        std::map<unsigned long, int> counts;
        for (const auto& e : file.elements) ++counts[mpz_fdiv_ui(e.value()->get_mpz_t(), p.get_ui())];
        for (unsigned long r = 1; r < p.get_ui() && !expected; ++r) {
            if (counts[r] < 2) expected = {p.get_ui(), r};
        }
        if (expected) break;
    }
    ASSERT_TRUE(expected);
    const auto report = verify_set_file(file);
    ASSERT_FALSE(report.ok());
    EXPECT_EQ(report.failure->check, "coverage");
    EXPECT_EQ(report.failure->prime, expected->first);
    EXPECT_EQ(report.failure->residue, expected->second);
}

TEST(Verify, ReservedClassInjection) {
    auto file = generated(ConstructionTag::direct_crt, "poly:2", 2);
    const auto& [q, r] = *file.reservations.entries().rbegin();
    // A value in class r mod q that respects sparsity and every other
    // reservation.
    const Nat lo = *file.elements.back().value() * 2;
    Nat v = lo + mod_floor(r - lo, q);
    auto clashes = [&](const Nat& x) {
        for (const auto& [q2, r2] : file.reservations.entries()) {
            if (q2 != q && mod_floor(x, q2) == r2) return true;
        }
        return false;
    };
    while (clashes(v)) v += q;
    file.elements.push_back(Element::of_value(v));
    file.provenance.push_back(SeedComposite{});
    file.stated_values.push_back(std::nullopt);
    file.declared_indices.push_back(file.elements.size());
    const auto report = verify_set_file(file);
    ASSERT_FALSE(report.ok());
    EXPECT_TRUE(report.failure->check == "reservations" || report.failure->check == "admissibility")
        << report.failure->check;
    EXPECT_EQ(report.failure->prime, q);
}

TEST(Verify, OtherMutations) {
    auto unsorted = generated(ConstructionTag::powers_primroot, "power:2");
    std::swap(unsorted.elements[3], unsorted.elements[4]);
    std::swap(unsorted.stated_values[3], unsorted.stated_values[4]);
    EXPECT_EQ(failing_check(unsorted), "monotonicity");

    auto dense = generated(ConstructionTag::offset_blocked, "poly:2");
    dense.config.budget = SparsityBudget::power(2);
    EXPECT_EQ(failing_check(dense), "sparsity");

    auto wrong_base = generated(ConstructionTag::powers_primroot, "power:2");
    wrong_base.elements[0] = Element::of_power(3, wrong_base.elements[0].power().exponent);
    EXPECT_EQ(failing_check(wrong_base), "element-form");

    auto wrong_value = generated(ConstructionTag::powers_primroot, "power:2");
    wrong_value.stated_values[0] = Nat(5);
    EXPECT_EQ(failing_check(wrong_value), "element-form");

    auto renumbered = generated(ConstructionTag::powers_primroot, "power:2");
    renumbered.declared_indices[2] = 7;
    EXPECT_EQ(failing_check(renumbered), "numbering");

    auto bad_prime = generated(ConstructionTag::powers_primroot, "power:2");
    bad_prime.processed_primes.push_back(9);
    EXPECT_EQ(failing_check(bad_prime), "coverage");

    auto singleton = generated(ConstructionTag::powers_subgroup, "power:2");
    erase_element(singleton, 0);
    EXPECT_EQ(failing_check(singleton), "coverage");

    auto witness = generated(ConstructionTag::offset_blocked, "power:2");
    // d_0 = 4 and 4 + 1 is prime.
    for (auto& b : witness.blocked_offsets) {
        if (b.offset == 1) b.index = 0;
    }
    EXPECT_EQ(failing_check(witness), "blocked-offsets");
}

TEST(Verify, InadmissibleSetIsCaught) {
    // {2, 3} covers both classes mod 2; nothing reserved, no processed primes.
    auto file = generated(ConstructionTag::offset_blocked, "poly:1");
    file.elements = {Element::of_value(2), Element::of_value(3)};
    file.provenance = {SeedComposite{}, SeedComposite{}};
    file.stated_values = {std::nullopt, std::nullopt};
    file.declared_indices = {1, 2};
    file.blocked_offsets.clear();
    file.reservations = {};
    const auto report = verify_set_file(file);
    ASSERT_FALSE(report.ok());
    EXPECT_EQ(report.failure->check, "admissibility");
    EXPECT_EQ(report.failure->prime, 2);
}

}  // namespace
