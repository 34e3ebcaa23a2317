#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "admiss/growing_set.hpp"

using admiss::Element;
using admiss::GrowingSet;
using admiss::Nat;

namespace {

GrowingSet values(std::initializer_list<unsigned long> xs) {
    GrowingSet set;
    for (auto x : xs) set.append(Element::of_value(x), admiss::SeedComposite{});
    return set;
}

TEST(Element, ResiduesOfPowersAndValues) {
    const auto p = Element::of_power(2, 100);
    Nat full;
    mpz_ui_pow_ui(full.get_mpz_t(), 2, 100);
    for (unsigned long m = 1; m < 60; ++m) {
        ASSERT_EQ(p.residue(m), full % m);
        ASSERT_EQ(p.translated_residue(-7, m), admiss::mod_floor(full - 7, m));
    }
    EXPECT_EQ(Element::of_value(10).translated_residue(-12, 7), 5);
    EXPECT_EQ(*p.value(), full);
    EXPECT_FALSE(p.value(64));
    EXPECT_EQ(Element::of_power(2, 10).describe(), "1024");
    EXPECT_EQ(Element::of_power(2, 1000).describe(64), "2^1000");
}

TEST(Element, OrderingAcrossForms) {
    EXPECT_LT(Element::of_value(1023), Element::of_power(2, 10));
    EXPECT_EQ(Element::of_value(1024), Element::of_power(2, 10));
    EXPECT_EQ(Element::of_power(4, 5), Element::of_power(2, 10));
    EXPECT_LT(Element::of_power(2, 1000), Element::of_power(3, 1000));
    EXPECT_THROW(Element::of_value(0), std::invalid_argument);
}

TEST(GrowingSet, AppendRequiresIncrease) {
    auto set = values({1, 4, 9});
    EXPECT_THROW(set.append(Element::of_value(9), admiss::SeedComposite{}), std::invalid_argument);
    EXPECT_THROW(set.append(Element::of_value(2), admiss::SeedComposite{}), std::invalid_argument);
    set.append(Element::of_power(2, 4), admiss::Cover{3, 1, 1});
    EXPECT_EQ(set.size(), 4u);
    EXPECT_EQ(std::get<admiss::Cover>(set.provenance(3)).prime, 3);
}

TEST(GrowingSet, SparsityViolationIndex) {
    const auto set = values({2, 3, 8, 16});
    const auto budget = admiss::SparsityBudget::power(2);
    EXPECT_EQ(admiss::first_sparsity_violation(set.elements(), budget), 1u);
    EXPECT_FALSE(admiss::check_sparsity(set, budget));
    EXPECT_TRUE(admiss::check_sparsity(values({2, 4, 8, 16}), budget));
}

TEST(ResidueProfile, MatchesDirectCounting) {
    std::mt19937_64 rng(5);
    GrowingSet set;
    unsigned long x = 0;
    std::vector<unsigned long> raw;
    for (int i = 0; i < 60; ++i) {
        x += 1 + rng() % 20;
        raw.push_back(x);
        set.append(Element::of_value(x), admiss::SeedComposite{});
    }
    for (unsigned long p : {2ul, 3ul, 5ul, 7ul, 11ul, 13ul, 97ul}) {
        const auto profile = admiss::residue_profile(set, p);
        std::size_t occupied = 0;
        for (unsigned long r = 0; r < p; ++r) {
            std::size_t count = 0;
            for (auto v : raw) count += v % p == r;
            ASSERT_EQ(profile.count(r), count);
            occupied += count > 0;
        }
        EXPECT_EQ(profile.occupied_classes(), occupied);
        EXPECT_EQ(profile.total(), raw.size());
    }
    EXPECT_THROW(admiss::residue_profile(set, 9), std::domain_error);
}

TEST(ResidueProfile, FirstEmptyClass) {
    const auto set = values({3, 4, 7});
    const auto profile = admiss::residue_profile(set, 5);
    EXPECT_EQ(profile.first_empty_class(), 0);
    EXPECT_EQ(profile.first_empty_class(1), 1);
    EXPECT_FALSE(profile.first_empty_class(2));
    EXPECT_EQ(admiss::residue_profile(set, 3).first_empty_class(), 2);
    EXPECT_FALSE(admiss::residue_profile(values({1, 2, 3}), 3).first_empty_class());
}

TEST(Admissibility, SmallExamples) {
    EXPECT_FALSE(admiss::is_admissible_at(values({1, 2, 3}), 3));
    EXPECT_TRUE(admiss::is_admissible_at(values({1, 7, 13}), 3));
    EXPECT_FALSE(admiss::is_admissible_upto(values({2, 3}), 10).admissible);
    EXPECT_EQ(*admiss::is_admissible_upto(values({2, 3}), 10).failing_prime, 2);
    EXPECT_TRUE(admiss::is_admissible_upto(values({2, 6, 8}), 8).admissible);
    EXPECT_FALSE(admiss::is_admissible_upto(values({2, 4, 6}), 8).admissible);
    EXPECT_TRUE(admiss::is_admissible_upto(GrowingSet{}, 100).admissible);
}

TEST(Admissibility, BruteForceAgreement) {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 500; ++trial) {
        GrowingSet set;
        std::vector<unsigned long> raw;
        unsigned long x = 0;
        for (int i = 0, n = 1 + static_cast<int>(rng() % 8); i < n; ++i) {
            x += 1 + rng() % 6;
            raw.push_back(x);
            set.append(Element::of_value(x), admiss::SeedComposite{});
        }
        bool expected = true;
        for (unsigned long p = 2; p <= x; ++p) {
            bool prime = true;
            for (unsigned long d = 2; d * d <= p; ++d) prime = prime && p % d != 0;
            if (!prime) continue;
            std::vector<bool> hit(p);
            for (auto v : raw) hit[v % p] = true;
            expected = expected && std::find(hit.begin(), hit.end(), false) != hit.end();
        }
        ASSERT_EQ(admiss::is_admissible_upto(set, x).admissible, expected);
    }
}

TEST(Reservations, RecordAndAdmit) {
    admiss::ReservationTable table;
    table.record(3, 2);
    table.record(5, 0);
    EXPECT_THROW(table.record(3, 1), std::invalid_argument);
    EXPECT_THROW(table.record(7, 7), std::invalid_argument);
    EXPECT_TRUE(table.admits(Nat(7)));
    EXPECT_FALSE(table.admits(Nat(8)));
    EXPECT_FALSE(table.admits(Nat(10)));
    EXPECT_FALSE(table.admits(Element::of_power(2, 3)));
    EXPECT_EQ(*table.reserved(3), 2);
    EXPECT_FALSE(table.reserved(11));
}

TEST(Reservations, SmallestFreeClass) {
    admiss::ReservationTable table;
    const auto set = values({1, 3});
    EXPECT_EQ(admiss::reserve_residue(table, set, 3), 2);
    EXPECT_EQ(admiss::reserve_residue(table, set, 5), 0);
    EXPECT_THROW(admiss::reserve_residue(table, set, 3), std::invalid_argument);
    EXPECT_THROW(admiss::reserve_residue(table, set, 2), std::invalid_argument);
}

}  // namespace
