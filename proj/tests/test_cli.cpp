#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "pdlab/cli.hpp"

using namespace pdlab;

namespace
{
struct Result
{
    int code;
    std::string out;
    std::string err;
};

Result run_cli(std::vector<std::string> args)
{
    args.insert(args.begin(), "pdlab");
    std::vector<char const*> argv;
    for (auto const& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = cli::run(int(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

io::json parse(std::string const& s)
{
    return io::json::parse(s);
}

std::filesystem::path temp_dir(std::string const& name)
{
    auto d = std::filesystem::temp_directory_path() / ("pdlab_cli_" + name);
    std::filesystem::remove_all(d);
    std::filesystem::create_directories(d);
    return d;
}
}  // namespace

TEST(Cli, MomentsPlanarMean)
{
    auto r = run_cli({"moments", "--n", "2", "--mu", "-1", "--gamma", "1", "--s", "1"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = parse(r.out);
    EXPECT_EQ(j["schema_version"], "1.0");
    EXPECT_NEAR(j["results"][0]["value"].get<double>(), 0.5, 1e-12);
    EXPECT_EQ(j["results"][0]["provenance"], "closed_form");
    EXPECT_EQ(j["config"]["seed"], "0x5EEDDE1A0A11");
}

TEST(Cli, IdentitiesAllHold)
{
    auto r = run_cli({"identities", "--grid", "default"});
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream is(r.out);
    std::string line;
    std::getline(is, line);
    EXPECT_EQ(line, "schema_version,a,k,m,proposition,lhs,rhs,abs_diff,holds,provenance\r");
    int rows = 0, odd_digamma = 0;
    while (std::getline(is, line))
    {
        ++rows;
        bool holds = line.find(",true,") != std::string::npos;
        bool odd_k = line.find(",3,,digamma-sum,") != std::string::npos
                     || line.find(",11,,digamma-sum,") != std::string::npos
                     || line.find(",101,,digamma-sum,") != std::string::npos;
        odd_digamma += odd_k;
        if (odd_k || line.find("offset-odd-k") != std::string::npos)
            EXPECT_FALSE(holds) << line;  // the odd-k closed form is off by 3/2
        else
            EXPECT_TRUE(holds) << line;
    }
    EXPECT_EQ(odd_digamma, 15);
    EXPECT_GT(rows, 100);
}

TEST(Cli, BerryEsseenCsvHasFittedConstant)
{
    auto r = run_cli({"berry-esseen", "--mu", "-1", "--sweep", "10,100,1000"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("distance_times_sqrt_log_n"), std::string::npos);
    EXPECT_NE(r.out.find("bound_constant"), std::string::npos);
    EXPECT_NE(r.out.find(",fitted\r\n"), std::string::npos);
}

TEST(Cli, ExitCodes)
{
    EXPECT_EQ(run_cli({}).code, 1);
    EXPECT_EQ(run_cli({"frobnicate"}).code, 1);
    EXPECT_EQ(run_cli({"moments", "--bogus"}).code, 1);
    EXPECT_EQ(run_cli({"moments", "--mu", "-3"}).code, 2);
    EXPECT_EQ(run_cli({"moments", "--n", "abc"}).code, 2);
    EXPECT_EQ(run_cli({"cgf", "--re", "-5"}).code, 2);
    EXPECT_EQ(run_cli({"--seed", "0xZZ", "moments"}).code, 2);
    EXPECT_EQ(run_cli({"sample", "--n", "4", "--kind", "volume"}).code, 2);
    EXPECT_EQ(run_cli({"delaunay2d", "--side", "5"}).code, 2);
    EXPECT_EQ(run_cli({"delaunay2d", "--side", "100000"}).code, 2);
    EXPECT_EQ(run_cli({"specfun", "--function", "digamma", "--x", "-1"}).code, 2);
    EXPECT_EQ(run_cli({"--version"}).code, 0);
    EXPECT_EQ(run_cli({"--help"}).code, 0);
}

TEST(Cli, ConvergenceFailureExitCode)
{
    // the angular sampler cannot accept at such a large weight
    auto r = run_cli({"sample", "--n", "3", "--mu", "5000", "--count", "1"});
    EXPECT_EQ(r.code, 3) << r.err;
}

TEST(Cli, SeedParsing)
{
    EXPECT_EQ(cli::parse_seed("0x5EED_DE1A_0A11"), kDefaultSeed);
    EXPECT_EQ(cli::parse_seed("1_000"), 1000u);
    EXPECT_THROW(cli::parse_seed("12abc"), DomainError);
}

TEST(Cli, ConfigFile)
{
    auto d = temp_dir("config");
    {
        std::ofstream(d / "ok.json") << R"({"seed": 7, "params": {"n": 3, "mu": 0.5}})";
        std::ofstream(d / "broken.json") << R"({"seed": )";
        std::ofstream(d / "unknown.json") << R"({"colour": 1})";
        std::ofstream(d / "badtype.json") << R"({"params": {"n": "three"}})";
    }
    auto r = run_cli({"--config", (d / "ok.json").string(), "moments", "--mu", "1"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = parse(r.out);
    EXPECT_EQ(j["config"]["params"]["n"], 3);
    EXPECT_EQ(j["config"]["params"]["mu"], 1.0);  // flag wins over file
    EXPECT_EQ(j["config"]["seed"], "0x7");
    EXPECT_EQ(run_cli({"--config", (d / "broken.json").string(), "moments"}).code, 2);
    EXPECT_EQ(run_cli({"--config", (d / "unknown.json").string(), "moments"}).code, 2);
    EXPECT_EQ(run_cli({"--config", (d / "badtype.json").string(), "moments"}).code, 2);
    EXPECT_EQ(run_cli({"--config", (d / "missing.json").string(), "moments"}).code, 2);
    std::filesystem::remove_all(d);
}

TEST(Cli, OutputDirectoryAndSidecar)
{
    auto d = temp_dir("outdir");
    auto r = run_cli({"--output-dir", d.string(), "regimes", "--drivers", "100"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(r.out.empty());
    EXPECT_TRUE(std::filesystem::exists(d / "regimes.csv"));
    std::ifstream meta(d / "regimes.csv.meta.json");
    auto j = io::json::parse(meta);
    EXPECT_EQ(j["config"]["subcommand"], "regimes");
    std::filesystem::remove_all(d);
}

TEST(Cli, OutputDirectoryFromEnvironment)
{
    auto d = temp_dir("env");
    ::setenv("PDLAB_OUTPUT_DIR", d.string().c_str(), 1);
    auto r = run_cli({"specfun", "--output", "sf.json"});
    ::unsetenv("PDLAB_OUTPUT_DIR");
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(std::filesystem::exists(d / "sf.json"));
    std::filesystem::remove_all(d);
}

TEST(Cli, ByteIdenticalAcrossJobs)
{
    std::vector<std::string> base = {"delaunay2d", "--side", "60", "--replicates", "3", "--mode", "toroidal"};
    auto a = base, b = base;
    a.insert(a.begin(), {"--jobs", "1"});
    b.insert(b.begin(), {"--jobs", "3"});
    auto ra = run_cli(a), rb = run_cli(b);
    ASSERT_EQ(ra.code, 0) << ra.err;
    EXPECT_EQ(ra.out, rb.out);

    auto sa = run_cli({"--jobs", "1", "sample", "--n", "3", "--count", "2000", "--streams", "5"});
    auto sb = run_cli({"--jobs", "4", "sample", "--n", "3", "--count", "2000", "--streams", "5"});
    ASSERT_EQ(sa.code, 0);
    EXPECT_EQ(sa.out, sb.out);
    auto sc = run_cli({"--seed", "1", "sample", "--n", "3", "--count", "2000", "--streams", "5"});
    EXPECT_NE(sa.out, sc.out);
}

TEST(Cli, EveryRowHasProvenance)
{
    std::vector<std::vector<std::string>> cmds = {
        {"specfun", "--function", "log_barnes_g", "--x", "1.5"},
        {"cgf", "--n", "3", "--re", "0.5", "--im", "2"},
        {"cumulants", "--n", "10", "--mu", "0"},
        {"cdf", "--n", "5"},
        {"ldp", "--sweep", "100"},
        {"modphi", "--sweep", "100"},
        {"sample", "--n", "2", "--kind", "radius-ks", "--count", "500"},
        {"delaunay2d", "--side", "40"}};
    std::set<std::string> allowed = {"closed_form", "oracle_fd", "monte_carlo", "tessellation", "fitted"};
    for (auto cmd : cmds)
    {
        cmd.insert(cmd.begin(), {"--format", "json"});
        auto r = run_cli(cmd);
        ASSERT_EQ(r.code, 0) << cmd[2] << ": " << r.err;
        auto j = parse(r.out);
        ASSERT_FALSE(j["results"].empty());
        for (auto const& row : j["results"])
            EXPECT_TRUE(allowed.count(row["provenance"].get<std::string>())) << cmd[2];
    }
}

TEST(Cli, ReportOnlySubset)
{
    auto r = run_cli({"report", "--only", "1,10,14"});
    EXPECT_EQ(r.code, 0) << r.err;
    auto j = parse(r.out);
    ASSERT_EQ(j["results"].size(), 3u);
    for (auto const& c : j["results"])
    {
        EXPECT_EQ(c["status"], "PASS");
        EXPECT_FALSE(c.contains("elapsed_seconds"));
    }
    EXPECT_EQ(run_cli({"report", "--only", "15"}).code, 2);
}
