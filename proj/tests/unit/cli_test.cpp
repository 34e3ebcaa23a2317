#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "admiss/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = admiss::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() / ("admiss_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::create_directories(dir_);
        setenv("ADMISS_SEEDLESS", "1", 1);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    fs::path dir_;
};

TEST_F(Cli, GenVerifyCertify) {
    const auto a = path("a.jsonl");
    auto gen = run({"gen", "--construction", "powers-primroot", "--base", "2", "--budget", "power:2", "--primes", "3",
                    "--out", a});
    ASSERT_EQ(gen.code, 0) << gen.err;
    EXPECT_NE(gen.out.find("processed primes: 3 5 11"), std::string::npos);
    EXPECT_NE(gen.out.find("elements: 20"), std::string::npos);

    EXPECT_EQ(run({"verify", a}).code, 0);
    EXPECT_EQ(run({"verify", "--set", a}).code, 0);

    const auto report = path("r.json");
    auto ok = run({"certify", "--set", a, "--nmax", "164", "--out", report});
    EXPECT_EQ(ok.code, 0);
    EXPECT_NE(ok.out.find("certified 329/329"), std::string::npos);
    EXPECT_EQ(run({"verify", a, "--report", report}).code, 0);

    auto edge = run({"certify", "--set", a, "--nmax", "165"});
    EXPECT_EQ(edge.code, 1);
    EXPECT_NE(edge.out.find("uncertified: -165 165"), std::string::npos);

    EXPECT_EQ(run({"certify", "--set", a, "--nmax", "0"}).code, 0);
}

TEST_F(Cli, SubgroupFile) {
    const auto c = path("c.jsonl");
    auto gen = run({"gen", "--construction", "powers-subgroup", "--base", "4", "--primes", "2", "--budget", "poly:2",
                    "--out", c});
    ASSERT_EQ(gen.code, 0) << gen.err;
    EXPECT_EQ(run({"verify", c}).code, 0);
    auto analyze = run({"analyze", c});
    EXPECT_EQ(analyze.code, 0);
    EXPECT_NE(analyze.out.find("\"mode\":\"no-singleton\""), std::string::npos);
}

TEST_F(Cli, EmptySet) {
    const auto e = path("e.jsonl");
    EXPECT_EQ(run({"gen", "--primes", "0", "--out", e}).code, 0);
    EXPECT_EQ(run({"verify", e}).code, 0);
    EXPECT_EQ(run({"certify", e, "--nmax", "3"}).code, 1);
}

TEST_F(Cli, TamperedFileNamesPrimeAndClass) {
    const auto a = path("a.jsonl");
    ASSERT_EQ(run({"gen", "--primes", "2", "--out", a}).code, 0);
    auto text = slurp(a);
    // Drop the line for m = 5.
    const auto start = text.find("{\"base\":\"2\",\"exponent\":\"8\"");
    ASSERT_NE(start, std::string::npos);
    text.erase(start, text.find('\n', start) - start + 1);
    const auto t = path("t.jsonl");
    std::ofstream(t, std::ios::binary) << text;
    auto verify = run({"verify", t});
    EXPECT_EQ(verify.code, 1);
    EXPECT_NE(verify.out.find("FAIL coverage"), std::string::npos);
    EXPECT_NE(verify.out.find("(prime 5, class 1)"), std::string::npos) << verify.out;
}

TEST_F(Cli, Primroots) {
    auto small = run({"primroots", "--base", "2", "--bound", "30"});
    EXPECT_EQ(small.code, 0);
    EXPECT_EQ(small.out, "3 5 11 13 19 29\ndensity 6/10 = 0.600000\n");
    EXPECT_EQ(run({"primroots", "--base", "4", "--prime-bound", "100"}).out, "\ndensity 0/25 = 0.000000\n");
    EXPECT_EQ(run({"primroots", "--bound", "2"}).out, "\ndensity 0/1 = 0.000000\n");
    EXPECT_EQ(run({"primroots", "--base", "1", "--bound", "10"}).code, 2);
}

TEST_F(Cli, UsageErrors) {
    const auto o = path("o.jsonl");
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    EXPECT_EQ(run({"--help"}).code, 0);
    EXPECT_EQ(run({"gen", "--help"}).code, 0);
    EXPECT_EQ(run({"gen", "--primes", "1"}).code, 2);
    EXPECT_EQ(run({"gen", "--construction", "direct-crt", "--base", "3", "--out", o}).code, 2);
    EXPECT_EQ(run({"gen", "--construction", "powers-primroot", "--offsets", "3", "--out", o}).code, 2);
    EXPECT_EQ(run({"gen", "--construction", "direct-crt", "--prime-list", "3", "--out", o}).code, 2);
    EXPECT_EQ(run({"gen", "--copies", "1", "--out", o}).code, 2);
    EXPECT_EQ(run({"gen", "--budget", "power:1", "--out", o}).code, 2);
    EXPECT_EQ(run({"gen", "--construction", "nope", "--out", o}).code, 2);
    EXPECT_EQ(run({"gen", "--base", "x", "--out", o}).code, 2);
    EXPECT_EQ(run({"gen", "--primes", "-1", "--out", o}).code, 2);
    EXPECT_FALSE(fs::exists(o));
    EXPECT_EQ(run({"certify", "--set", o}).code, 2);
    EXPECT_EQ(run({"verify", path("missing.jsonl")}).code, 2);

    const auto junk = path("junk.jsonl");
    std::ofstream(junk) << "{not json\n";
    EXPECT_EQ(run({"verify", junk}).code, 2);
    EXPECT_EQ(run({"analyze", junk}).code, 2);
}

TEST_F(Cli, ConstructionFailureIsNonZero) {
    auto r = run({"gen", "--base", "4", "--primes", "1", "--out", path("x.jsonl")});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("construction failed"), std::string::npos);
}

TEST_F(Cli, SeedlessOutputIsDeterministic) {
    for (const char* construction : {"powers-primroot", "direct-crt", "powers-subgroup", "offset-blocked"}) {
        std::vector<std::string> args{"gen", "--construction", construction, "--budget", "poly:2", "--primes", "2",
                                      "--limit", "20"};
        if (std::string(construction) == "offset-blocked") args = {"gen", "--construction", construction, "--offsets", "12"};
        auto a = args;
        a.insert(a.end(), {"--out", path("1.jsonl")});
        auto b = args;
        b.insert(b.end(), {"--out", path("2.jsonl")});
        ASSERT_EQ(run(a).code, 0);
        ASSERT_EQ(run(b).code, 0);
        EXPECT_EQ(slurp(path("1.jsonl")), slurp(path("2.jsonl"))) << construction;
        EXPECT_EQ(run({"certify", path("1.jsonl"), "--nmax", "30", "--out", path("r1.json")}).code,
                  run({"certify", path("2.jsonl"), "--nmax", "30", "--out", path("r2.json"), "--threads", "3"}).code);
        EXPECT_EQ(slurp(path("r1.json")), slurp(path("r2.json"))) << construction;
    }

    unsetenv("ADMISS_SEEDLESS");
    ASSERT_EQ(run({"gen", "--primes", "1", "--out", path("t.jsonl")}).code, 0);
    EXPECT_NE(slurp(path("t.jsonl")).find("generated_at"), std::string::npos);
}

}  // namespace
