#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "cli_util.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using cli::slurp;
using CliResult = cli::Result;

CliResult run_cli(const std::string& args) { return cli::run(args); }

class CliTest : public ::testing::Test {
  protected:
    fs::path dir_;
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("plwe-cli-" + std::to_string(::testing::UnitTest::GetInstance()
                                                 ->current_test_info()
                                                 ->line()));
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }
};

TEST_F(CliTest, ParamsMachineReadable) {
    CliResult r = run_cli("params --p 2 --n 10 --A 2 --q-min 24000 --format machine-readable");
    ASSERT_EQ(r.status, 0);
    json j = json::parse(r.out);
    EXPECT_EQ(j["q"], 24029);
    EXPECT_EQ(j["u"], 6007);
    EXPECT_EQ(j["m"], 1024);
    EXPECT_EQ(j["N"], 512);
    EXPECT_EQ(j["phi"], "x^512+1");
    EXPECT_EQ(j["factor_degree"], 256);
    EXPECT_EQ(j["factor_constants"], (json::array({11937, 12092})));
    EXPECT_EQ(j["rho"], 12092);
}

TEST_F(CliTest, ParamsTextMentionsFactors) {
    CliResult r = run_cli("params --p 2 --n 10 --A 2 --q-min 24000");
    ASSERT_EQ(r.status, 0);
    EXPECT_NE(r.out.find("q = 24029"), std::string::npos);
    EXPECT_NE(r.out.find("phi = x^512+1"), std::string::npos);
    EXPECT_NE(r.out.find("(x^256+11937)(x^256+12092)"), std::string::npos);
    EXPECT_NE(r.out.find("rho = 12092"), std::string::npos);
}

TEST_F(CliTest, GenThenAttackRoundTrip) {
    fs::path set = dir_ / "set.txt";
    CliResult g = run_cli("gen --p 2 --n 4 --A 2 --q-min 20 --oracle plwe --M 10 --sigma 1 "
                          "--seed 5 --out " + set.string() + " --format machine-readable");
    ASSERT_EQ(g.status, 0);
    json gj = json::parse(g.out);
    EXPECT_EQ(gj["q"], 29);
    EXPECT_TRUE(fs::exists(set));

    fs::path report = dir_ / "report.json";
    CliResult a = run_cli("attack --in " + set.string() + " --cutoff 2 --out " +
                          report.string() + " --format machine-readable");
    ASSERT_EQ(a.status, 0);
    json aj = json::parse(a.out);
    EXPECT_EQ(aj["q"], 29);
    EXPECT_EQ(aj["M"], 10);
    EXPECT_EQ(aj["sigma_cardinality"], 25);
    EXPECT_TRUE(aj["verdict"] == "PLWE" || aj["verdict"] == "NOT ENOUGH SAMPLES" ||
                aj["verdict"] == "NOT PLWE");
    EXPECT_LE(aj["multiplications"].get<std::uint64_t>(),
              aj["budget_direct"].get<std::uint64_t>());
    // the --out report matches stdout
    EXPECT_EQ(json::parse(slurp(report)), aj);
}

TEST_F(CliTest, GenIsDeterministicPerSeed) {
    fs::path f1 = dir_ / "a.txt", f2 = dir_ / "b.txt", f3 = dir_ / "c.txt";
    ASSERT_EQ(run_cli("gen --p 2 --n 4 --q-min 20 --M 5 --sigma 1 --seed 7 --out " +
                      f1.string()).status, 0);
    ASSERT_EQ(run_cli("gen --p 2 --n 4 --q-min 20 --M 5 --sigma 1 --seed 7 --out " +
                      f2.string()).status, 0);
    ASSERT_EQ(run_cli("gen --p 2 --n 4 --q-min 20 --M 5 --sigma 1 --seed 8 --out " +
                      f3.string()).status, 0);
    EXPECT_EQ(slurp(f1), slurp(f2));
    EXPECT_NE(slurp(f1), slurp(f3));
}

TEST_F(CliTest, ExperimentMachineReadable) {
    CliResult r = run_cli("experiment --p 2 --n 4 --q-min 20 --sigma 1 --cutoff 2 --M 10 "
                          "--ntests 2 --seed 3 --format machine-readable");
    ASSERT_EQ(r.status, 0);
    json j = json::parse(r.out);
    EXPECT_EQ(j["q"], 29);
    EXPECT_EQ(j["sigma_cardinality"], 25);
    EXPECT_EQ(j["runs"].size(), 4u);
    for (const auto& run : j["runs"]) {
        EXPECT_TRUE(run["oracle"] == "plwe" || run["oracle"] == "uniform");
        EXPECT_TRUE(run.contains("verdict"));
        EXPECT_TRUE(run.contains("failure"));
    }
    EXPECT_TRUE(j.contains("plwe_failures"));
    EXPECT_TRUE(j.contains("uniform_failures"));
}

TEST_F(CliTest, StatsSubcommandsRun) {
    CliResult u = run_cli("stats uniform-sum --p 2 --n 4 --q-min 20 --M 4 --ntests 20000 "
                          "--seed 9 --format machine-readable");
    ASSERT_EQ(u.status, 0);
    json uj = json::parse(u.out);
    EXPECT_EQ(uj["q"], 29);
    EXPECT_EQ(uj["lambda"].size(), 4u);
    EXPECT_GT(uj["pvalue"].get<double>(), 0.0);

    CliResult s = run_cli("stats survival-rate --p 2 --n 4 --q-min 20 --sigma 1 --cutoff 2 "
                          "--ntests 20000 --seed 9 --format machine-readable");
    ASSERT_EQ(s.status, 0);
    json sj = json::parse(s.out);
    EXPECT_EQ(sj["sigma_cardinality"], 25);
    EXPECT_NEAR(sj["expected"].get<double>(), 25.0 / 29.0, 1e-12);
    EXPECT_TRUE(sj["pass"].get<bool>());
}

TEST_F(CliTest, BenchCsvShape) {
    fs::path csv = dir_ / "bench.csv";
    CliResult r = run_cli("bench --degree 512 --ntests 2 --p 2 --n 10 --q-min 24000 --out " +
                          csv.string());
    ASSERT_EQ(r.status, 0);
    ASSERT_EQ(r.out.rfind("strategy,degree,mults,ers_bound,nanos\n", 0), 0u);
    // 2 trials x 2 strategies = 4 data rows
    int lines = 0;
    for (char c : r.out) lines += c == '\n' ? 1 : 0;
    EXPECT_EQ(lines, 5);
    EXPECT_NE(r.out.find("horner,512,512,"), std::string::npos);
    EXPECT_NE(r.out.find("block,512,45,"), std::string::npos);
    EXPECT_EQ(slurp(csv), r.out);

    // a constant polynomial costs nothing under either strategy
    CliResult z = run_cli("bench --degree 0 --ntests 1 --p 2 --n 4 --q-min 20");
    ASSERT_EQ(z.status, 0);
    EXPECT_NE(z.out.find("horner,0,0,"), std::string::npos);
    EXPECT_NE(z.out.find("block,0,0,"), std::string::npos);
}

TEST_F(CliTest, ExitCodes) {
    EXPECT_EQ(run_cli("--help").status, 0);
    EXPECT_EQ(run_cli("params --help").status, 0);
    // invalid parameters: p must be prime
    EXPECT_EQ(run_cli("params --p 4 --n 4").status, 2);
    // unknown flag
    EXPECT_EQ(run_cli("params --bogus 1").status, 2);
    // missing subcommand
    EXPECT_EQ(run_cli("").status, 2);
    // attack inapplicable: |Sigma| = 49 >= q = 29
    fs::path set = dir_ / "set.txt";
    ASSERT_EQ(run_cli("gen --p 2 --n 4 --q-min 20 --M 3 --sigma 1 --seed 1 --out " +
                      set.string()).status, 0);
    EXPECT_EQ(run_cli("attack --in " + set.string() + " --cutoff 3").status, 3);
    // I/O error: missing input file
    EXPECT_EQ(run_cli("attack --in " + (dir_ / "nope.txt").string()).status, 4);
    // I/O error: corrupted file
    std::ofstream(dir_ / "bad.txt") << "garbage\n";
    EXPECT_EQ(run_cli("attack --in " + (dir_ / "bad.txt").string()).status, 4);
}

} // namespace
