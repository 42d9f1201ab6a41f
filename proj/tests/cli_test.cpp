#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "cli.hpp"
#include "io.hpp"
#include "sl2h/errors.hpp"

using namespace sl2h;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code = 0;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args)
{
    args.insert(args.begin(), "sl2h");
    std::vector<const char*> argv;
    for (const auto& s : args)
        argv.push_back(s.c_str());
    std::ostringstream out, err;
    Run r;
    r.code = cli::dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

class Cli : public ::testing::Test {
protected:
    void SetUp() override
    {
        dir_ = fs::temp_directory_path() /
               ("sl2h_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
                ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }
    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    fs::path dir_;
};

std::string slurp(const std::string& p)
{
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_F(Cli, ScalarOutputs)
{
    auto r = run({"gamma", "--l", "2", "--n", "2"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "1\n");
    r = run({"gamma", "--l", "5", "--n", "3"});
    EXPECT_EQ(r.out, "2\n");
    r = run({"density", "--tau", "minus", "--lambda", "0"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "1.0\n");
}

TEST_F(Cli, UsageErrors)
{
    EXPECT_EQ(run({"gamma", "--bogus", "1"}).code, 2);
    EXPECT_EQ(run({"nosuch"}).code, 2);
    EXPECT_EQ(run({"spherical", "--t-grid", "0:1"}).code, 2);
    EXPECT_EQ(run({"spherical", "--t-grid", "0:1:0"}).code, 2);
    EXPECT_EQ(run({"decompose", "--matrix", "1,0,0,2"}).code, 2);
    EXPECT_EQ(run({"density", "--tau", "neither"}).code, 2);
    EXPECT_EQ(run({"gamma", "--help"}).code, 0);
}

TEST_F(Cli, ExistenceTimes)
{
    auto r = run({"existence-time", "--problem", "heat", "--c", "2", "--p", "2", "--norms", "1"});
    ASSERT_EQ(r.code, 0);
    EXPECT_NEAR(std::stod(r.out), std::sqrt(3.0) / 4.0, 1e-15);
    r = run({"existence-time", "--problem", "heat", "--c", "2", "--p", "2", "--norms", "0"});
    EXPECT_EQ(r.out, "inf\n");
    r = run({"existence-time", "--problem", "global", "--gamma", "2", "--gamma0", "0.25", "--c", "2", "--p", "2",
             "--T", "16", "--norms", "0"});
    EXPECT_EQ(r.out, "true\n");
    EXPECT_EQ(run({"existence-time", "--problem", "wave", "--norms", "1"}).code, 2);
}

TEST_F(Cli, ProfileCsvRoundtripIsExact)
{
    const auto f = make_bump({0, 0}, 0.4, 1.6, 64, cplx(1.0, 0.5), 2.0);
    io::write_profile_csv(path("f.csv"), f, io::json::object());
    const auto g = io::read_profile_csv(path("f.csv"));
    ASSERT_EQ(g.size(), f.size());
    EXPECT_EQ(g.pair(), f.pair());
    for (std::size_t i = 0; i < f.size(); ++i) {
        EXPECT_EQ(g.nodes()[i], f.nodes()[i]);
        EXPECT_EQ(g.values()[i], f.values()[i]);
    }
}

TEST_F(Cli, PlancherelCheckOnCsv)
{
    io::write_profile_csv(path("f.csv"), make_bump({0, 0}, 0.4, 1.6), io::json::object());
    const auto r = run({"plancherel-check", "--input", path("f.csv")});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto doc = io::json::parse(r.out);
    EXPECT_LT(doc["rel_err"].get<double>(), 1e-6);
    EXPECT_EQ(doc["config"]["subcommand"], "plancherel-check");
    EXPECT_EQ(doc["config"]["input"], path("f.csv"));
}

TEST_F(Cli, TransformInvertRoundtrip)
{
    const auto f = make_bump({0, 0}, 0.4, 1.6);
    io::write_profile_csv(path("f.csv"), f, io::json::object());
    ASSERT_EQ(run({"transform", "--input", path("f.csv"), "--out", path("s.json")}).code, 0);
    const auto s = io::spectral_from_json(io::read_json(path("s.json")));
    EXPECT_EQ(io::spectral_json(io::spectral_from_json(io::spectral_json(s))).dump(),
              io::spectral_json(s).dump());
    ASSERT_EQ(run({"invert", "--input", path("s.json"), "--t-max", "2", "--out", path("g.csv")}).code, 0);
    const auto g = io::read_profile_csv(path("g.csv"));
    double err = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i)
        err = std::max(err, std::abs(g.values()[i] - cplx(bump_shape(g.nodes()[i], 0.4, 1.6))));
    EXPECT_LT(err, 1e-4);
}

TEST_F(Cli, ConfigMergeAndEcho)
{
    {
        std::ofstream cfg(path("c.json"));
        cfg << R"({"subcommand": "bound", "theorem": "heat", "p": 1.5, "q": 4, "t": 2.0})";
    }
    const auto a = run({"bound", "--config", path("c.json")});
    ASSERT_EQ(a.code, 0) << a.err;
    const auto b = run({"bound", "--config", path("c.json"), "--t", "0.5"});
    ASSERT_EQ(b.code, 0) << b.err;
    const auto ja = io::json::parse(a.out), jb = io::json::parse(b.out);
    EXPECT_EQ(ja["config"]["t"], 2.0);
    EXPECT_EQ(jb["config"]["t"], 0.5);
    EXPECT_EQ(ja["config"]["q"], 4.0);
    EXPECT_EQ(ja["config"]["theorem"], "heat");
    EXPECT_NE(ja["bound"], jb["bound"]);
    // Rerunning the echoed config reproduces the output.
    {
        std::ofstream cfg(path("echo.json"));
        cfg << ja["config"].dump();
    }
    EXPECT_EQ(run({"bound", "--config", path("echo.json")}).out, a.out);
    EXPECT_EQ(run({"gamma", "--config", path("c.json")}).code, 2);
}

TEST_F(Cli, DeterministicOutput)
{
    io::write_profile_csv(path("f.csv"), make_bump({0, 0}, 0.4, 1.6, 64, 1.0, 5.0), io::json::object());
    const std::vector<std::string> args = {"transform", "--input", path("f.csv")};
    const auto a = run(args), b = run(args);
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
}

TEST_F(Cli, DivergenceExitsThree)
{
    const auto u0 = sample_profile({0, 0}, RadialRule::uniform(0.0, 8.0, 32),
                                   [](double t) { return cplx(50.0 * bump_shape(t, 0.2, 3.0)); });
    io::write_profile_csv(path("u0.csv"), u0, io::json::object());
    const auto r = run({"heat-solve", "--input", path("u0.csv"), "--symbol", "one", "--p", "2", "--T", "1",
                        "--max-iter", "20", "--out", path("st.json")});
    EXPECT_EQ(r.code, 3);
}

TEST_F(Cli, HeatSolveWritesState)
{
    const auto u0 = sample_profile({0, 0}, RadialRule::uniform(0.0, 8.0, 32),
                                   [](double t) { return cplx(0.1 * bump_shape(t, 0.2, 3.0)); });
    io::write_profile_csv(path("u0.csv"), u0, io::json::object());
    const auto r = run({"heat-solve", "--input", path("u0.csv"), "--symbol", "heat", "--t", "0.5", "--p", "2",
                        "--T", "0.25", "--out", path("st.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto doc = io::read_json(path("st.json"));
    EXPECT_TRUE(doc["converged"].get<bool>());
    EXPECT_EQ(doc["config"]["symbol"], "heat");
    EXPECT_FALSE(slurp(path("st.json")).empty());
}
