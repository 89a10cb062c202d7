#include "blockeq/io.hpp"

#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <sys/wait.h>

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(BLOCKEQ_CLI) + " " + args + " 2>/dev/null";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return r;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
    const int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string sample(const std::string& name) { return std::string(SAMPLES_DIR) + "/" + name; }

blockeq::io::Json json(const Run& r) { return blockeq::io::Json::parse(r.out); }

}  // namespace

TEST(Cli, ParrySullivanOfFibonacci) {
    const auto r = run("ps " + sample("fib.json"));
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(json(r), blockeq::io::Json::parse(R"({"parry_sullivan":"-1"})"));
}

TEST(Cli, FlowEquivalenceYesCarriesInvariants) {
    const auto r = run("flow-eq " + sample("full2.json") + " " + sample("fib.json"));
    EXPECT_EQ(r.code, 0);
    const auto j = json(r);
    EXPECT_EQ(j["status"], "yes");
    EXPECT_EQ(j["flow_invariants"]["left"]["parry_sullivan"], "-1");
    EXPECT_EQ(j["flow_invariants"]["right"]["parry_sullivan"], "-1");
}

TEST(Cli, BlockedEquivalenceNo) {
    const auto r = run("blocked-eq " + sample("two.json") + " " + sample("three.json") + " --group sl --max-depth 1");
    EXPECT_EQ(r.code, 1);
    const auto j = json(r);
    EXPECT_EQ(j["status"], "no");
    EXPECT_EQ(j["certificate"]["name"], "cokernel");
}

TEST(Cli, UnknownExitsTwo) {
    const auto r = run("blocked-eq " + sample("identity2.json") + " " + sample("sl2_word.json") +
                       " --group sl --max-depth 1 --max-nodes 2");
    EXPECT_EQ(r.code, 2);
    EXPECT_EQ(json(r)["status"], "unknown");
}

TEST(Cli, OutputFile) {
    const std::string path = ::testing::TempDir() + "blockeq_cli_out.json";
    const auto r = run("snf " + sample("diag23.json") + " -o " + path);
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(r.out.empty());
    std::FILE* f = std::fopen(path.c_str(), "r");
    ASSERT_NE(f, nullptr);
    std::fclose(f);
    std::remove(path.c_str());
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(run("").code, 64);
    EXPECT_EQ(run("frobnicate").code, 64);
    EXPECT_EQ(run("snf").code, 64);
    EXPECT_EQ(run("snf a b").code, 64);
    EXPECT_EQ(run("blocked-eq " + sample("two.json") + " " + sample("three.json") + " --group xl").code, 64);
    EXPECT_EQ(run("flow-eq " + sample("fib.json") + " " + sample("fib.json") + " --max-depth 0").code, 64);
    EXPECT_EQ(run("unit-eq " + sample("one.json") + " " + sample("one.json")).code, 64);
    EXPECT_EQ(run("snf " + sample("fib.json") + " --format xml").code, 64);
    EXPECT_EQ(run("validate " + sample("fib.json") + " --schema nonsense").code, 64);
    EXPECT_EQ(run("--help").code, 0);
}

TEST(Cli, MalformedInputs) {
    EXPECT_EQ(run("snf " + sample("bad_entries.json")).code, 65);
    EXPECT_EQ(run("snf " + sample("bad_decimal.json")).code, 65);
    EXPECT_EQ(run("snf " + sample("does_not_exist.json")).code, 65);
    EXPECT_EQ(run("ps " + sample("rect_example.json")).code, 65);
    EXPECT_EQ(run("bf " + sample("minus_one.json")).code, 65);
    EXPECT_EQ(run("kweb " + sample("rect_example.json")).code, 65);
    EXPECT_EQ(run("validate " + sample("fib.json") + " --schema rep").code, 65);
    EXPECT_EQ(run("blocked-eq " + sample("one.json") + " " + sample("identity2.json")).code, 65);
}

TEST(Cli, ValidateDetectsSchema) {
    const auto r = run("validate " + sample("rect_example.json"));
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(json(r)["schema"], "blocked");
}

TEST(Cli, DeterministicOutput) {
    const std::string args = "blocked-eq " + sample("chain_213.json") + " " + sample("chain_203.json") + " --group sl";
    EXPECT_EQ(run(args).out, run(args).out);
}
