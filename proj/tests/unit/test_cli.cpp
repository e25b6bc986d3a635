#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dgsor/cli.hpp"
#include "dgsor/matrix_market.hpp"
#include "dgsor/problems.hpp"

using namespace dgsor;
using namespace dgsor::cli;
using nlohmann::json;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "dgsolve");
    std::ostringstream out, err;
    const int code = cli_main(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = std::filesystem::temp_directory_path() /
               ("dgsor_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        std::filesystem::create_directories(dir_);
    }
    void TearDown() override { std::filesystem::remove_all(dir_); }
    std::string path(const std::string& name) const { return (dir_ / name).string(); }
    std::filesystem::path dir_;
};

} // namespace

TEST_F(CliTest, SolveReportsSummary) {
    const Result r = invoke({"solve", "--gen", "laplacian1d", "--n", "16", "--method", "dg-ia", "--p", "jacobi",
                             "--h", "2"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const json j = json::parse(r.out);
    EXPECT_EQ(j["method"], "dg-ia");
    EXPECT_EQ(j["parameter"], 2.0);
    EXPECT_TRUE(j["converged"].get<bool>());
    EXPECT_LT(j["spectral_radius"].get<double>(), 1.0);
    EXPECT_GT(j["iterations"].get<int>(), 0);
}

TEST_F(CliTest, OmegaIsMappedForDgMethods) {
    const Result r = invoke({"solve", "--gen", "laplacian1d", "--n", "6", "--method", "dg-ia", "--omega", "1"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_EQ(json::parse(r.out)["parameter"], 2.0);
}

TEST_F(CliTest, ClassicalSolve) {
    const Result r = invoke({"solve", "--gen", "laplacian2d", "--m", "4", "--method", "sor", "--omega", "1.5"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const json j = json::parse(r.out);
    EXPECT_EQ(j["method"], "sor");
    EXPECT_EQ(j["parameter"], 1.5);
}

TEST_F(CliTest, NonConvergenceExitsOne) {
    const Result r = invoke({"solve", "--gen", "laplacian2d", "--m", "4", "--method", "euler", "--p", "identity",
                             "--h", "1", "--max-iters", "50"});
    EXPECT_EQ(r.code, kExitFail);
    EXPECT_FALSE(json::parse(r.out)["converged"].get<bool>());
}

TEST_F(CliTest, TraceCsvAndJson) {
    const Result csv = invoke({"solve", "--gen", "random-spd", "--n", "5", "--seed", "3", "--method", "dg-sym",
                               "--h", "1", "--trace", path("t.csv")});
    ASSERT_EQ(csv.code, kExitOk) << csv.err;
    std::istringstream lines(slurp(path("t.csv")));
    std::string line;
    std::getline(lines, line);
    EXPECT_EQ(line, "k,energy,residual,decrement");
    std::size_t rows = 0;
    while (std::getline(lines, line)) ++rows;
    EXPECT_EQ(rows, json::parse(csv.out)["iterations"].get<std::size_t>() + 1);

    const Result js = invoke({"solve", "--gen", "random-spd", "--n", "5", "--seed", "3", "--method", "dg-sym",
                              "--h", "1", "--trace", path("t.json"), "--format", "json"});
    ASSERT_EQ(js.code, kExitOk) << js.err;
    const json trace = json::parse(slurp(path("t.json")));
    ASSERT_TRUE(trace.is_array());
    EXPECT_EQ(trace.size(), rows);
    EXPECT_EQ(trace[0]["k"], 0);
    EXPECT_EQ(trace[0]["decrement"], 0.0);
}

TEST_F(CliTest, GenRoundTripAndFiles) {
    ASSERT_EQ(invoke({"gen", "--gen", "random-spd", "--n", "6", "--seed", "4", "--rhs", "random", "--out-A",
                      path("a.mtx"), "--out-b", path("b.mtx")})
                  .code,
              kExitOk);
    EXPECT_EQ(mm::load_matrix(path("a.mtx")), problems::random_spd(6, 4));
    const Result r = invoke({"solve", "--A", path("a.mtx"), "--b", path("b.mtx"), "--method", "gs"});
    EXPECT_EQ(r.code, kExitOk) << r.err;
}

TEST_F(CliTest, SeedFromEnvironment) {
    ::setenv("DGSOLVE_SEED", "9", 1);
    const Result env = invoke({"solve", "--gen", "random-spd", "--n", "5", "--method", "dg-ia", "--h", "1"});
    ::unsetenv("DGSOLVE_SEED");
    const Result flag =
        invoke({"solve", "--gen", "random-spd", "--n", "5", "--seed", "9", "--method", "dg-ia", "--h", "1"});
    const Result other =
        invoke({"solve", "--gen", "random-spd", "--n", "5", "--seed", "8", "--method", "dg-ia", "--h", "1"});
    EXPECT_EQ(env.out, flag.out);
    EXPECT_NE(env.out, other.out);
}

TEST_F(CliTest, EquivAndSpectrum) {
    const Result e =
        invoke({"equiv", "--pair", "sor", "--gen", "random-spd", "--n", "8", "--seed", "1", "--omega", "1.5"});
    ASSERT_EQ(e.code, kExitOk) << e.err;
    const json j = json::parse(e.out);
    EXPECT_LE(j["matrix_gap"].get<double>(), 1e-11);

    const Result eb = invoke({"equiv", "--pair", "bsor", "--gen", "random-spd", "--n", "9", "--blocks", "3,5",
                              "--omega", "1.2", "--instances", "4"});
    EXPECT_EQ(eb.code, kExitOk) << eb.err;

    const Result euler = invoke({"spectrum", "--method", "euler", "--p", "identity", "--h", "1", "--gen",
                                 "laplacian2d", "--m", "3"});
    ASSERT_EQ(euler.code, kExitOk) << euler.err;
    EXPECT_GE(json::parse(euler.out)["spectral_radius"].get<double>(), 1.0);
    const Result dg = invoke({"spectrum", "--method", "dg-ia", "--p", "identity", "--h", "1", "--gen",
                              "laplacian2d", "--m", "3"});
    EXPECT_LT(json::parse(dg.out)["spectral_radius"].get<double>(), 1.0);
}

TEST_F(CliTest, Axioms) {
    const Result r = invoke({"axioms", "--samples", "50", "--seed", "2"});
    EXPECT_EQ(r.code, kExitOk) << r.err;
}

TEST_F(CliTest, UsageErrors) {
    EXPECT_EQ(invoke({"solve", "--bogus"}).code, kExitUsage);
    EXPECT_EQ(invoke({"solve", "--gen", "laplacian1d", "--n", "4", "--h", "1", "--omega", "1"}).code, kExitUsage);
    EXPECT_EQ(invoke({"solve", "--gen", "laplacian1d", "--n", "4", "--h", "-1"}).code, kExitUsage);
    EXPECT_EQ(invoke({"solve", "--A", path("missing.mtx")}).code, kExitUsage);
    EXPECT_EQ(invoke({"equiv", "--pair", "sor", "--gen", "laplacian1d", "--n", "4", "--omega", "2"}).code,
              kExitUsage);
    EXPECT_EQ(invoke({}).code, kExitUsage);
}
