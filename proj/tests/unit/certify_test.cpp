#include <gtest/gtest.h>

#include "admiss/certify.hpp"
#include "oracles.hpp"

using namespace admiss;

namespace {

ConstructionRun primroot_run(std::size_t primes) {
    ConstructionConfig c;
    c.construction = ConstructionTag::powers_primroot;
    c.budget = SparsityBudget::power(2);
    c.prime_quota = primes;
    return construct(c);
}

bool translate_has_non_prime(const GrowingSet& set, long n) {
    for (const auto& e : set.elements()) {
        if (!oracle::trial_division_prime(*e.value() + n)) return true;
    }
    return false;
}

TEST(CertifyWindow, FullWindowBelowProduct) {
    const auto run = primroot_run(3);
    const auto report = certify_window(run, 164, 2);
    EXPECT_EQ(report.product_of_primes, 165);
    EXPECT_EQ(report.certificates.size(), 329u);
    EXPECT_TRUE(report.uncertified.empty());
    EXPECT_EQ(report.guaranteed_radius, 164);
    for (const auto& c : report.certificates) {
        EXPECT_TRUE(verify_certificate(run.set, c));
        EXPECT_TRUE(translate_has_non_prime(run.set, c.offset)) << c.offset;
        EXPECT_TRUE(c.exact);
    }
}

TEST(CertifyWindow, ProductItselfIsNotCertified) {
    const auto report = certify_window(primroot_run(3), 165, 1);
    EXPECT_EQ(report.uncertified, (std::vector<std::int64_t>{-165, 165}));
    EXPECT_EQ(report.certificates.size(), 329u);
    EXPECT_EQ(report.guaranteed_radius, 164);
}

TEST(CertifyWindow, ThreadCountDoesNotChangeResult) {
    const auto run = primroot_run(3);
    const auto one = certify_window(run, 400, 1);
    const auto many = certify_window(run, 400, 4);
    ASSERT_EQ(one.certificates.size(), many.certificates.size());
    EXPECT_EQ(one.uncertified, many.uncertified);
    for (std::size_t i = 0; i < one.certificates.size(); ++i) EXPECT_EQ(one.certificates[i].offset, many.certificates[i].offset);
}

TEST(CertifyWindow, Errors) {
    const auto run = primroot_run(1);
    EXPECT_THROW(certify_window(run, -1), std::invalid_argument);
}

TEST(BlockingCertificate, OffsetZeroUsesNonPrimeMember) {
    const auto run = primroot_run(1);
    const auto cert = find_blocking_certificate(run.set, 0, run.processed_primes);
    ASSERT_TRUE(cert);
    const auto& member = std::get<NonPrimeMember>(cert->evidence);
    EXPECT_EQ(member.index, 0u);
    EXPECT_EQ(member.reason, NonPrimeReason::factor);
    EXPECT_TRUE(verify_certificate(run.set, *cert));
}

TEST(BlockingCertificate, TwoInClassUsesSmallestPrimeNotDividingOffset) {
    const auto run = primroot_run(3);
    const auto cert = find_blocking_certificate(run.set, 3, run.processed_primes);
    ASSERT_TRUE(cert);
    const auto& two = std::get<TwoInClass>(cert->evidence);
    EXPECT_EQ(two.prime, 5);
    EXPECT_NE(two.first, two.second);
    EXPECT_EQ(run.set[two.first].translated_residue(3, 5), 0);
    EXPECT_EQ(run.set[two.second].translated_residue(3, 5), 0);
}

TEST(BlockingCertificate, TamperedEvidenceIsRejected) {
    const auto run = primroot_run(3);
    const auto cert = *find_blocking_certificate(run.set, 7, run.processed_primes);
    auto wrong_offset = cert;
    wrong_offset.offset = 8;
    EXPECT_FALSE(verify_certificate(run.set, wrong_offset));

    auto same_member = cert;
    auto& two = std::get<TwoInClass>(same_member.evidence);
    two.second = two.first;
    EXPECT_FALSE(verify_certificate(run.set, same_member));

    auto composite_modulus = cert;
    std::get<TwoInClass>(composite_modulus.evidence).prime = 9;
    EXPECT_FALSE(verify_certificate(run.set, composite_modulus));

    auto out_of_range = cert;
    std::get<TwoInClass>(out_of_range.evidence).second = run.set.size();
    EXPECT_FALSE(verify_certificate(run.set, out_of_range));

    BlockingCertificate bogus{5, NonPrimeMember{0, NonPrimeReason::factor, Nat(2)}, true};
    EXPECT_FALSE(verify_certificate(run.set, bogus));
}

TEST(NonPrimeEvidence, Reasons) {
    GrowingSet set;
    set.append(Element::of_value(10), SeedComposite{});
    set.append(Element::of_value(13), SeedComposite{});
    auto unit = non_prime_evidence(set, 0, -9);
    ASSERT_TRUE(unit);
    EXPECT_EQ(unit->reason, NonPrimeReason::unit_or_nonpositive);
    auto factor = non_prime_evidence(set, 0, 0);
    ASSERT_TRUE(factor);
    EXPECT_EQ(factor->reason, NonPrimeReason::factor);
    EXPECT_EQ(10 % *factor->factor, 0);
    EXPECT_FALSE(non_prime_evidence(set, 1, 0));
    EXPECT_FALSE(non_prime_evidence(set, 0, 1));
}

TEST(Coverage, Modes) {
    const auto run = primroot_run(2);
    EXPECT_NO_THROW(coverage_certificate(run.set, 3, CoverageMode::double_cover));
    EXPECT_NO_THROW(coverage_certificate(run.set, 5, CoverageMode::double_cover));
    EXPECT_THROW(coverage_certificate(run.set, 5, CoverageMode::double_cover, 3), CoverageError);
    EXPECT_THROW(coverage_certificate(run.set, 4, CoverageMode::double_cover), std::domain_error);

    GrowingSet set;
    for (unsigned long v : {1, 8, 9}) set.append(Element::of_value(v), SeedComposite{});
    try {
        coverage_certificate(set, 7, CoverageMode::no_singleton);
        FAIL() << "expected a singleton class";
    } catch (const CoverageError& e) {
        EXPECT_EQ(e.prime(), 7);
        EXPECT_EQ(e.residue(), 2);
        EXPECT_EQ(e.count(), 1u);
    }
}

TEST(Coverage, ModeForConstruction) {
    EXPECT_EQ(coverage_mode_for(ConstructionTag::powers_primroot), CoverageMode::double_cover);
    EXPECT_EQ(coverage_mode_for(ConstructionTag::direct_crt), CoverageMode::double_cover);
    EXPECT_EQ(coverage_mode_for(ConstructionTag::powers_subgroup), CoverageMode::no_singleton);
    EXPECT_FALSE(coverage_mode_for(ConstructionTag::offset_blocked));
}

TEST(CertifyWindow, OffsetBlockedUsesRecordedWitnesses) {
    ConstructionConfig c;
    c.construction = ConstructionTag::offset_blocked;
    c.budget = SparsityBudget::power(2);
    c.offset_quota = 30;
    const auto run = construct(c);
    const auto report = certify_window(run, 30, 1);
    EXPECT_TRUE(report.uncertified.empty());
    for (const auto& cert : report.certificates) EXPECT_TRUE(translate_has_non_prime(run.set, cert.offset));
}

}  // namespace
