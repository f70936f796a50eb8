#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "plwe/experiment.hpp"
#include "plwe/sample_io.hpp"

namespace {

using namespace plwe;
namespace fs = std::filesystem;

class SampleIoTest : public ::testing::Test {
  protected:
    fs::path dir_;

    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("plwe-io-" + std::to_string(::testing::UnitTest::GetInstance()
                                                ->current_test_info()
                                                ->line()));
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    static AttackContext ctx() { return AttackContext(FieldContext(29, 2, 2), 4, 12); }
};

std::string slurp(const fs::path& p) {
    std::ifstream is(p);
    return std::string(std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>());
}

TEST_F(SampleIoTest, RoundTripExact) {
    SampleSet set = generate_sample_set(ctx(), OracleKind::plwe, 7, 1.0,
                                        SigmaMeaning::stddev, 42);
    fs::path file = dir_ / "set.txt";
    write_sample_set(file, set);
    SampleSet back = read_sample_set(file);
    EXPECT_EQ(back.header.p, set.header.p);
    EXPECT_EQ(back.header.n, set.header.n);
    EXPECT_EQ(back.header.q, set.header.q);
    EXPECT_EQ(back.header.rho, set.header.rho);
    EXPECT_EQ(back.header.sigma, set.header.sigma);
    EXPECT_EQ(back.header.sigma_meaning, set.header.sigma_meaning);
    EXPECT_EQ(back.header.oracle, set.header.oracle);
    EXPECT_EQ(back.header.seed, set.header.seed);
    EXPECT_EQ(back.header.M, set.header.M);
    EXPECT_EQ(back.header.secret_commitment, set.header.secret_commitment);
    ASSERT_EQ(back.samples.size(), set.samples.size());
    AttackContext loaded_ctx = context_from_header(back.header);
    for (std::size_t i = 0; i < set.samples.size(); ++i) {
        EXPECT_EQ(back.samples[i].a, set.samples[i].a);
        EXPECT_EQ(back.samples[i].b, set.samples[i].b);
        EXPECT_TRUE(membership_R0(loaded_ctx, back.samples[i].a));
    }
    EXPECT_FALSE(fs::exists(dir_ / "set.txt.tmp"));
}

TEST_F(SampleIoTest, RegenerateFromHeaderIsBitExact) {
    for (OracleKind oracle : {OracleKind::plwe, OracleKind::uniform}) {
        SampleSet set = generate_sample_set(ctx(), oracle, 5, 2.0, SigmaMeaning::stddev, 17);
        SampleSet regen = regenerate_sample_set(set.header);
        EXPECT_EQ(regen.header.secret_commitment, set.header.secret_commitment);
        ASSERT_EQ(regen.samples.size(), set.samples.size());
        for (std::size_t i = 0; i < set.samples.size(); ++i) {
            EXPECT_EQ(regen.samples[i].a, set.samples[i].a);
            EXPECT_EQ(regen.samples[i].b, set.samples[i].b);
        }
    }
}

TEST_F(SampleIoTest, SameSeedSameBytes) {
    fs::path f1 = dir_ / "one.txt", f2 = dir_ / "two.txt";
    write_sample_set(f1, generate_sample_set(ctx(), OracleKind::plwe, 5, 1.0,
                                             SigmaMeaning::stddev, 99));
    write_sample_set(f2, generate_sample_set(ctx(), OracleKind::plwe, 5, 1.0,
                                             SigmaMeaning::stddev, 99));
    EXPECT_EQ(slurp(f1), slurp(f2));

    fs::path f3 = dir_ / "three.txt";
    write_sample_set(f3, generate_sample_set(ctx(), OracleKind::plwe, 5, 1.0,
                                             SigmaMeaning::stddev, 100));
    EXPECT_NE(slurp(f1), slurp(f3));
}

TEST_F(SampleIoTest, VarianceMeaningChangesSamples) {
    SampleSet sd = generate_sample_set(ctx(), OracleKind::plwe, 5, 4.0,
                                       SigmaMeaning::stddev, 7);
    SampleSet var = generate_sample_set(ctx(), OracleKind::plwe, 5, 4.0,
                                        SigmaMeaning::variance, 7);
    // same a-streams, different error scale (effective stddev 4 vs 2)
    EXPECT_EQ(sd.samples[0].a, var.samples[0].a);
    bool all_equal = true;
    for (std::size_t i = 0; i < sd.samples.size(); ++i)
        all_equal = all_equal && sd.samples[i].b == var.samples[i].b;
    EXPECT_FALSE(all_equal);
    EXPECT_EQ(effective_stddev(4.0, SigmaMeaning::variance), 2.0);
    EXPECT_EQ(effective_stddev(4.0, SigmaMeaning::stddev), 4.0);
}

TEST_F(SampleIoTest, HeaderLineParsesBack) {
    SampleSetHeader h;
    h.p = 2; h.n = 10; h.A = 2; h.q = 24029; h.rho = 12092;
    h.sigma = 8.0;
    h.oracle = OracleKind::uniform;
    h.seed = 4242;
    h.M = 10;
    SampleSetHeader back = parse_header_line(header_line(h));
    EXPECT_EQ(back.q, 24029u);
    EXPECT_EQ(back.rho, 12092u);
    EXPECT_EQ(back.sigma, 8.0);
    EXPECT_EQ(back.oracle, OracleKind::uniform);
    EXPECT_EQ(back.seed, 4242u);
    EXPECT_EQ(back.secret_commitment, "none");
}

TEST_F(SampleIoTest, MalformedInputsRaiseIoError) {
    EXPECT_THROW(read_sample_set(dir_ / "missing.txt"), io_error);
    EXPECT_THROW(parse_header_line("not-a-sample-set v1 p=2"), io_error);
    EXPECT_THROW(parse_header_line("plwe-sample-set v2 p=2 n=4 A=2 q=29 M=1"), io_error);
    EXPECT_THROW(parse_header_line("plwe-sample-set v1 p=2 n=4 A=2 q=29 M=1 bogus=3"), io_error);
    EXPECT_THROW(parse_header_line("plwe-sample-set v1 p=x n=4 A=2 q=29 M=1"), io_error);
    EXPECT_THROW(parse_header_line("plwe-sample-set v1 p=2 n=4 A=2"), io_error); // no q, M
    EXPECT_THROW(parse_header_line("plwe-sample-set v1 p=2 n=4 A=2 q=29 M=1 junk"), io_error);

    auto write_lines = [&](const std::string& name, const std::string& body) {
        fs::path p = dir_ / name;
        std::ofstream os(p);
        os << body;
        return p;
    };
    std::string head = "plwe-sample-set v1 p=2 n=4 A=2 q=29 rho=12 sigma=1 "
                       "sigma_meaning=stddev oracle=uniform seed=1 M=1 secret=none\n";
    // wrong coefficient count
    EXPECT_THROW(read_sample_set(write_lines("short.txt",
                 head + "1 2 3 | 1 2 3 4 5 6 7 8\n")), io_error);
    // coefficient >= q
    EXPECT_THROW(read_sample_set(write_lines("range.txt",
                 head + "29 0 0 0 0 0 0 0 | 0 0 0 0 0 0 0 0\n")), io_error);
    // M mismatch
    EXPECT_THROW(read_sample_set(write_lines("count.txt", head)), io_error);
    // missing separator
    EXPECT_THROW(read_sample_set(write_lines("nosep.txt",
                 head + "0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0\n")), io_error);
    // non-numeric coefficient
    EXPECT_THROW(read_sample_set(write_lines("alpha.txt",
                 head + "a 0 0 0 0 0 0 0 | 0 0 0 0 0 0 0 0\n")), io_error);
}

TEST_F(SampleIoTest, CommitmentIsStableAndSensitive) {
    RingElement s1{1, 2, 3, 4, 5, 6, 7, 8};
    RingElement s2{1, 2, 3, 4, 5, 6, 7, 9};
    EXPECT_EQ(secret_commitment(s1), secret_commitment(s1));
    EXPECT_NE(secret_commitment(s1), secret_commitment(s2));
    EXPECT_EQ(secret_commitment(s1).size(), 16u);
}

} // namespace
