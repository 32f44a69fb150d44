#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli_app.hpp"

namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run(std::vector<std::string> args)
{
    args.insert(args.begin(), "rainbow-subdiv");
    std::vector<const char*> argv;
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out, err;
    const int code = rainbow::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string sample(const std::string& name) { return std::string(RAINBOW_SAMPLES_DIR) + "/" + name; }

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

class Cli : public ::testing::Test {
protected:
    void SetUp() override
    {
        dir_ = fs::temp_directory_path() /
               ("rainbow_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }
    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    fs::path dir_;
};

} // namespace

TEST_F(Cli, HypercubeHasNoRainbowCycle)
{
    const auto q3 = path("q3.cg");
    ASSERT_EQ(run({"gen", "hypercube", "--m", "3", "--out", q3}).code, 0);
    const auto r = run({"rainbow-cycle", q3, "--max-len", "8"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "none\n");

    const auto j = run({"rainbow-cycle", q3, "--json"});
    EXPECT_EQ(j.code, 0);
    const auto doc = rainbow::Json::parse(j.out);
    EXPECT_EQ(doc["schema"], "1");
    EXPECT_TRUE(doc["cycle"].is_null());
}

TEST_F(Cli, SubdivisionOfRainbowK30Verifies)
{
    const auto rc = path("rc30.cg");
    const auto cert = path("cert.json");
    ASSERT_EQ(run({"gen", "rainbow-complete", "--n", "30", "--out", rc}).code, 0);
    const auto r = run({"find-subdivision", rc, "--t", "4", "--seed", "7", "--max-len", "12", "--out", cert});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto doc = rainbow::Json::parse(r.out);
    EXPECT_EQ(doc["status"], "success");
    EXPECT_EQ(doc["certificate"]["branch"].size(), 4u);

    const auto v = run({"verify", rc, cert, "--t", "4", "--max-len", "48"});
    EXPECT_EQ(v.code, 0);
    EXPECT_EQ(v.out, "accept\n");

    const auto wrong_t = run({"verify", rc, cert, "--t", "3", "--max-len", "48"});
    EXPECT_EQ(wrong_t.code, 1);
    EXPECT_EQ(wrong_t.out, "reject: wrong number of branch vertices: expected 3, got 4\n");
}

TEST_F(Cli, SubdivisionOnHypercubeFailsHonestly)
{
    const auto q4 = path("q4.cg");
    ASSERT_EQ(run({"gen", "hypercube", "--m", "4", "--out", q4}).code, 0);
    const auto r = run({"find-subdivision", q4, "--t", "3", "--seed", "1", "--max-len", "12"});
    EXPECT_EQ(r.code, 1);
    EXPECT_EQ(rainbow::Json::parse(r.out)["status"], "failure");
    EXPECT_NE(r.err.find("no certificate"), std::string::npos);
}

TEST_F(Cli, ConnectParityObstruction)
{
    const auto r = run({"connect", sample("q3.cg"), "--x", "0", "--y", "1", "--avoid-colours", "0", "--seed", "1"});
    EXPECT_EQ(r.code, 1);
    const auto doc = rainbow::Json::parse(r.out);
    EXPECT_EQ(doc["status"], "failure");
    EXPECT_TRUE(doc["path"].is_null());
    EXPECT_TRUE(doc.contains("transcript"));

    const auto ok = run({"connect", sample("q3.cg"), "--x", "0", "--y", "7", "--seed", "1"});
    EXPECT_EQ(ok.code, 0) << ok.out << ok.err;
    EXPECT_NE(ok.out.find("length 3"), std::string::npos);
}

TEST_F(Cli, CheckAndExtract)
{
    const auto r = run({"check", sample("q3.cg")});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "vertices 8\nedges 12\ncolours 3\naverage degree 3\nminimum degree 3\nmaximum degree 3\nproper yes\n");

    const auto m = run({"extract-minimal", sample("q3.cg"), "--d", "3", "--json"});
    EXPECT_EQ(m.code, 0);
    const auto doc = rainbow::Json::parse(m.out);
    EXPECT_EQ(doc["oracle_confirmed"], true);
    EXPECT_EQ(doc["edges"], 12);

    const auto c = run({"cover", sample("rc30.cg"), "--eps", "1/4"});
    EXPECT_EQ(c.code, 0);
    EXPECT_NE(c.out.find("covered 1 (0 edges uncovered)"), std::string::npos) << c.out;
}

TEST_F(Cli, UsageErrors)
{
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    EXPECT_EQ(run({"gen", "hypercube"}).code, 2);
    EXPECT_EQ(run({"connect", sample("q3.cg"), "--x", "0", "--y", "1"}).code, 2);
    EXPECT_EQ(run({"find-subdivision", sample("q3.cg"), "--t", "3"}).code, 2);
    EXPECT_EQ(run({"check", path("missing.cg")}).code, 2);
    EXPECT_EQ(run({"connect", sample("q3.cg"), "--x", "0", "--y", "99", "--seed", "1"}).code, 2);
    EXPECT_EQ(run({"extract-minimal", sample("q3.cg"), "--d", "7/0"}).code, 2);
    EXPECT_EQ(run({"--help"}).code, 0);

    std::ofstream(path("bad.cg")) << "3 2 1\n0 1 0\n1 2 0\n";
    const auto improper = run({"check", path("bad.cg")});
    EXPECT_EQ(improper.code, 2);
    EXPECT_EQ(improper.err.rfind("error: ", 0), 0u);

    std::ofstream(path("bad.json")) << "{ not json";
    EXPECT_EQ(run({"bench", path("bad.json")}).code, 2);
    std::ofstream(path("bad_kind.json")) << R"({"instances": [{"kind": "petersen"}]})";
    EXPECT_EQ(run({"bench", path("bad_kind.json")}).code, 2);
}

TEST_F(Cli, BenchGridCardinality)
{
    const auto r = run({"bench", sample("bench_random.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream in(r.out);
    std::vector<std::string> lines;
    for (std::string l; std::getline(in, l);) {
        lines.push_back(l);
    }
    ASSERT_EQ(lines.size(), 5u);
    EXPECT_EQ(lines[0], "index,instance,n,e,d,pieces,covered_fraction,rainbow_cycle,connect,subdivision");
    for (std::size_t i = 1; i < lines.size(); ++i) {
        EXPECT_EQ(lines[i].rfind(std::to_string(i - 1) + ",\"random n=", 0), 0u) << lines[i];
    }
}

TEST_F(Cli, BenchHypercubesHaveNoRainbowCycle)
{
    const auto r = run({"bench", sample("bench_hypercube.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, "index,instance,n,e,d,pieces,covered_fraction,rainbow_cycle,connect,subdivision\n"
                     "0,\"hypercube m=3\",8,12,3,,,none,,\n"
                     "1,\"hypercube m=4\",16,32,4,,,none,,\n"
                     "2,\"hypercube m=5\",32,80,5,,,none,,\n");
}

TEST_F(Cli, BenchEmptyGrid)
{
    const auto r = run({"bench", sample("bench_empty.json")});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "index,instance,n,e,d,pieces,covered_fraction,rainbow_cycle,connect,subdivision\n");
}

TEST_F(Cli, DeterministicOutput)
{
    const std::vector<std::string> sub{"find-subdivision", sample("random200.cg"), "--t", "3", "--seed", "2", "--max-len", "12", "--json"};
    const auto a = run(sub);
    const auto b = run(sub);
    EXPECT_EQ(a.code, b.code);
    EXPECT_EQ(a.out, b.out);

    const auto g1 = run({"gen", "random", "--n", "40", "--p", "0.3", "--rule", "fanned", "--seed", "9"});
    const auto g2 = run({"gen", "random", "--n", "40", "--p", "0.3", "--rule", "fanned", "--seed", "9"});
    EXPECT_EQ(g1.out, g2.out);
}

TEST_F(Cli, BenchThreadsDoNotChangeBytes)
{
    std::ofstream(path("grid.json")) << R"({"instances": [{"kind": "random", "n": [30, 40], "p": [0.3, 0.6], "seed": [1, 2]},
                                                          {"kind": "one-factorized", "n": [8, 12]}],
                                           "tasks": ["stats", "cover", "connect", "subdivision"], "max_len": 8})";
    ::setenv("RS_THREADS", "1", 1);
    const auto one = run({"bench", path("grid.json")});
    ::setenv("RS_THREADS", "4", 1);
    const auto four = run({"bench", path("grid.json")});
    ::setenv("RS_THREADS", "zero", 1);
    const auto bad = run({"bench", path("grid.json")});
    ::unsetenv("RS_THREADS");
    ASSERT_EQ(one.code, 0) << one.err;
    EXPECT_EQ(one.out, four.out);
    EXPECT_EQ(bad.code, 2);

    ASSERT_EQ(run({"bench", path("grid.json"), "--out", path("a.csv")}).code, 0);
    ASSERT_EQ(run({"bench", path("grid.json"), "--out", path("b.csv")}).code, 0);
    EXPECT_EQ(slurp(path("a.csv")), slurp(path("b.csv")));
    EXPECT_EQ(slurp(path("a.csv")), one.out);
}
