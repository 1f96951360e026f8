#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = keo::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string read_file(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

} // namespace

TEST(Cli, ParamsYanYee)
{
    const auto r = run({"params", "--name", "YY"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "{\"xi\":\"-1/3\",\"zeta\":\"1/6\",\"eta\":\"0\"}\n");
}

TEST(Cli, ParamsFromExpressionAndParameterizedName)
{
    EXPECT_EQ(run({"params", "--expr", "1/2 * 1/sqrt(m) p^2 1/sqrt(m)"}).out,
              "{\"xi\":\"-1/2\",\"zeta\":\"1/4\",\"eta\":\"0\"}\n");
    EXPECT_EQ(run({"params", "--name", "vR(-1/4,-1/2)"}).out, "{\"xi\":\"-3/8\",\"zeta\":\"1/8\",\"eta\":\"0\"}\n");
    EXPECT_EQ(run({"params", "--name", "YY", "--format", "csv"}).out, "xi,zeta,eta\n-1/3,1/6,0\n");
}

TEST(Cli, Table1MatchesGolden)
{
    const auto r = run({"table1", "--format", "csv"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, read_file(std::filesystem::path(KEO_GOLDEN_DIR) / "table1.csv"));
}

TEST(Cli, ClassifyOutsideIsDomainError)
{
    const auto r = run({"classify", "--xi", "-1/2", "--zeta", "1/2"});
    EXPECT_EQ(r.code, 1);
    EXPECT_TRUE(r.out.empty());
    EXPECT_NE(r.err.find("allowed region violated: zeta > -xi/2"), std::string::npos);
    EXPECT_EQ(std::count(r.err.begin(), r.err.end(), '\n'), 1);
}

TEST(Cli, ClassifyYanYee)
{
    const auto r = run({"classify", "--xi=-1/3", "--zeta", "1/6"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "{\"xi\":\"-1/3\",\"zeta\":\"1/6\",\"labels\":[{\"region\":\"III\",\"boundaries\":[\"upper\"]}]}\n");
}

TEST(Cli, FloatsRejectedWhereExactnessMatters)
{
    EXPECT_EQ(run({"classify", "--xi", "-0.5", "--zeta", "0"}).code, 2);
    EXPECT_EQ(run({"invert", "--xi", "-1/3", "--zeta", "0.1", "--class", "III"}).code, 2);
}

TEST(Cli, UsageErrors)
{
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    EXPECT_EQ(run({"classify", "--xi", "0"}).code, 2);
    EXPECT_EQ(run({"params"}).code, 2);
    EXPECT_EQ(run({"params", "--name", "YY", "--expr", "1/2 * p m^(-1) p"}).code, 2);
    EXPECT_EQ(run({"invert", "--xi", "0", "--zeta", "0", "--class", "IV"}).code, 2);
    EXPECT_EQ(run({"params", "--name", "YY", "--format", "xml"}).code, 2);
}

TEST(Cli, DomainErrors)
{
    EXPECT_EQ(run({"params", "--name", "Nope"}).code, 1);
    EXPECT_EQ(run({"params", "--expr", "1/2 * p m^(-1)"}).code, 1);
    EXPECT_EQ(run({"invert", "--xi", "-1/3", "--zeta", "1/6", "--class", "vR"}).code, 1);
    EXPECT_EQ(run({"dual", "--xi", "-1/2", "--zeta", "0"}).code, 1);
    EXPECT_EQ(run({"spectrum", "--expr", "p 1/m p", "--k", "1", "--profile", "gaussian"}).code, 1);
}

TEST(Cli, InvertSurdAndNumeric)
{
    const auto exact = run({"invert", "--xi", "-1/4", "--zeta", "1/32", "--class", "vR"});
    EXPECT_EQ(exact.code, 0);
    EXPECT_NE(exact.out.find("sqrt(2)"), std::string::npos);
    const auto numeric = run({"invert", "--xi", "-1/4", "--zeta", "1/32", "--class", "vR", "--numeric"});
    EXPECT_EQ(numeric.code, 0);
    EXPECT_EQ(numeric.out.find("sqrt"), std::string::npos);
}

TEST(Cli, DualRegionAndDeterminism)
{
    EXPECT_EQ(run({"dual", "--xi", "-1/4", "--zeta", "0"}).out,
              "{\"xi\":\"-1/4\",\"zeta\":\"0\",\"theta\":\"-1/16\",\"dual\":{\"xi\":\"-1/4\",\"zeta\":\"1/8\",\"theta\":\"1/16\"}}\n");
    const auto a = run({"region", "--resolution", "9", "--format", "csv"});
    const auto b = run({"region", "--resolution", "9", "--format", "csv"});
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.out.rfind("xi,zeta,region,boundaries\n", 0), 0u);
}

TEST(Cli, SpectrumAndDualPair)
{
    const auto s = run({"spectrum", "--name", "BDD", "--profile", "constant", "--xmin", "0", "--xmax", "3.141592653589793",
                        "--n", "400", "--k", "2"});
    ASSERT_EQ(s.code, 0) << s.err;
    EXPECT_NE(s.out.find("\"eigenvalues\":[0.49"), std::string::npos) << s.out;
    EXPECT_NE(s.out.find("\"params\""), std::string::npos);
    EXPECT_NE(s.out.find("\"grid\""), std::string::npos);
    const auto d = run({"dualpair", "--xi", "-1/4", "--theta", "1/16", "--n", "50", "--k", "2", "--format", "csv"});
    ASSERT_EQ(d.code, 0) << d.err;
    EXPECT_EQ(d.out.rfind("index,vR,I\n", 0), 0u);
}

TEST(Cli, AssembleAndDefect)
{
    const auto a = run({"assemble", "--name", "BDD", "--n", "4", "--profile", "constant", "--format", "csv"});
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(std::count(a.out.begin(), a.out.end(), '\n'), 4);
    const auto j = run({"assemble", "--name", "ZK", "--n", "5", "--pathway", "linear"});
    ASSERT_EQ(j.code, 0) << j.err;
    EXPECT_NE(j.out.find("\"pathway\":\"linear\""), std::string::npos);
    const auto d = run({"defect", "--names", "ZK", "BDD", "--profiles", "gaussian", "--n", "60"});
    ASSERT_EQ(d.code, 0) << d.err;
    EXPECT_NE(d.out.find("\"ordering\":\"ZK\""), std::string::npos);
    EXPECT_NE(d.out.find("\"exact\":true"), std::string::npos);
}

TEST(Cli, ConfigFileAndFlagPrecedence)
{
    const auto dir = std::filesystem::temp_directory_path();
    const auto cfg = dir / "keo_cli_test.toml";
    {
        std::ofstream f(cfg);
        f << "[classify]\nxi = \"-1/3\"\nzeta = \"1/6\"\n";
    }
    const auto from_file = run({"--config", cfg.string(), "classify"});
    EXPECT_EQ(from_file.code, 0) << from_file.err;
    EXPECT_NE(from_file.out.find("\"III\""), std::string::npos);
    const auto overridden = run({"--config", cfg.string(), "classify", "--zeta", "0"});
    EXPECT_EQ(overridden.code, 0) << overridden.err;
    EXPECT_NE(overridden.out.find("\"zeta\":\"0\""), std::string::npos);
    std::filesystem::remove(cfg);
}

TEST(Cli, OutputFile)
{
    const auto path = std::filesystem::temp_directory_path() / "keo_cli_params.json";
    const auto r = run({"--output", path.string(), "params", "--name", "ZK"});
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(r.out.empty());
    EXPECT_EQ(read_file(path), "{\"xi\":\"-1/2\",\"zeta\":\"1/4\",\"eta\":\"0\"}\n");
    std::filesystem::remove(path);
}
