#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "cli.hpp"
#include "thermores/errors.hpp"

namespace thermores::cli {
namespace {

namespace fs = std::filesystem;

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "thermores_cli_test";
    fs::create_directories(dir);
    return dir / name;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run(const std::vector<std::string>& args, std::string* out = nullptr, std::string* err = nullptr) {
    std::ostringstream o, e;
    const int code = run_cli(args, o, e);
    if (out) *out = o.str();
    if (err) *err = e.str();
    return code;
}

TEST(ParseArgs, SweepGrid) {
    const auto cfg = parse_args({"sweep", "--grid-T", "0:2:41", "--grid-g", "0:2:41", "--out", "pd.csv"});
    EXPECT_EQ(cfg.command, Command::Sweep);
    ASSERT_TRUE(cfg.grid_t && cfg.grid_g);
    EXPECT_EQ(cfg.grid_t->count, 41);
    EXPECT_EQ(cfg.grid_g->count, 41);
    EXPECT_EQ(cfg.grid_t->max, 2.0);
    EXPECT_EQ(cfg.out.value_or(""), "pd.csv");
}

TEST(ParseArgs, SteadyDefaults) {
    const auto cfg = parse_args({"steady", "--temperature", "1.0", "--g", "0.5"});
    EXPECT_EQ(cfg.command, Command::Steady);
    EXPECT_EQ(cfg.omega0, 1.0);
    EXPECT_EQ(cfg.gamma, 1.0);
    EXPECT_EQ(cfg.temperature.value_or(-1.0), 1.0);
    EXPECT_EQ(cfg.g.value_or(-1.0), 0.5);
    EXPECT_FALSE(cfg.out.has_value());
}

TEST(ParseArgs, Rejections) {
    EXPECT_THROW(parse_args({"evolve", "--bogus"}), UsageError);
    EXPECT_THROW(parse_args({"steady", "--temperature", "abc", "--g", "0.5"}), UsageError);
    EXPECT_THROW(parse_args({"steady", "--temperature", "1.0x", "--g", "0.5"}), UsageError);
    EXPECT_THROW(parse_args({"steady", "--temperature", "nan", "--g", "0.5"}), UsageError);
    EXPECT_THROW(parse_args({"steady", "--g", "0.5"}), UsageError);
    EXPECT_THROW(parse_args({"evolve", "--temperature", "1", "--g", "0.5"}), UsageError);
    EXPECT_THROW(parse_args({"sweep", "--grid-T", "0:2", "--grid-g", "0:2:3"}), UsageError);
    EXPECT_THROW(parse_args({"sweep", "--grid-T", "0:2:0", "--grid-g", "0:2:3"}), UsageError);
    EXPECT_THROW(parse_args({"sweep", "--grid-T", "2:0:3", "--grid-g", "0:2:3"}), UsageError);
    EXPECT_THROW(parse_args({"sweep", "--grid-T", "0:2:3:4", "--grid-g", "0:2:3"}), UsageError);
    EXPECT_THROW(parse_args({"launch"}), UsageError);
    EXPECT_THROW(parse_args({}), UsageError);
    EXPECT_THROW(parse_args({"--help"}), HelpRequested);
}

TEST(RunCli, ExitCodes) {
    std::string out, err;
    EXPECT_EQ(run({"evolve", "--bogus"}, &out, &err), 2);
    EXPECT_NE(err.find("Usage"), std::string::npos);
    EXPECT_EQ(run({"--help"}, &out), 0);
    EXPECT_NE(out.find("--grid-T"), std::string::npos);
    // Valid syntax, invalid physics: negative temperature is a validation failure.
    EXPECT_EQ(run({"steady", "--temperature", "-1", "--g", "0.5"}, &out, &err), 1);
    // Resonant coupling has an infinite rate on mode 1.
    EXPECT_EQ(run({"steady", "--temperature", "1", "--g", "1"}, &out, &err), 1);
    EXPECT_EQ(run({"sweep", "--grid-T", "0:1:2", "--grid-g", "0:1:2", "--out", "/nonexistent/dir/x.csv"}, &out,
                  &err),
              1);
    EXPECT_NE(err.find("/nonexistent/dir/x.csv"), std::string::npos);
}

TEST(RunCli, SteadyPrintsGibbsPopulations) {
    std::string out;
    ASSERT_EQ(run({"steady", "--temperature", "1.0", "--g", "0.5"}, &out), 0);
    EXPECT_NE(out.find("q0 0.508906861659\n"), std::string::npos);
    EXPECT_NE(out.find("q1 0.308667614534\n"), std::string::npos);
    EXPECT_NE(out.find("q2 0.113552469543\n"), std::string::npos);
    EXPECT_NE(out.find("q3 0.0688730542637\n"), std::string::npos);
    EXPECT_NE(out.find("negativity 0\n"), std::string::npos);
}

TEST(RunCli, EvolveSamplesIncludeEndpoints) {
    std::string out;
    ASSERT_EQ(run({"evolve", "--temperature", "0", "--g", "0.5", "--time", "2", "--samples", "5"}, &out), 0);
    std::istringstream lines(out);
    std::string line;
    std::vector<std::string> all;
    while (std::getline(lines, line)) all.push_back(line);
    ASSERT_EQ(all.size(), 6u);
    EXPECT_EQ(all[0], "t,q0,q1,q2,q3,negativity,witness");
    EXPECT_EQ(all[1].substr(0, 10), "0,0,0,0,1,");
    EXPECT_EQ(all[5].substr(0, 2), "2,");
}

TEST(RunCli, ProtocolReportsDistance) {
    std::string out;
    ASSERT_EQ(run({"protocol", "--temperature", "0.7", "--g", "0.3", "--time", "1.5", "--initial", "bell"}, &out), 0);
    EXPECT_NE(out.find("trace_distance_to_lindblad"), std::string::npos);
    EXPECT_NE(out.find("PASS"), std::string::npos);
    // An impossible tolerance turns the same run into a failure.
    EXPECT_EQ(run({"protocol", "--temperature", "0.7", "--g", "0.3", "--time", "1.5", "--tol", "0"}, &out), 1);
}

TEST(RunCli, VerifyPassesOnDefaults) {
    std::string out;
    EXPECT_EQ(run({"verify"}, &out), 0);
    EXPECT_EQ(out.find("FAIL"), std::string::npos);
    EXPECT_NE(out.find("PASS protocol_vs_lindblad"), std::string::npos);
}

TEST(FormatNumber, TwelveSignificantDigits) {
    EXPECT_EQ(format_number(0.0), "0");
    EXPECT_EQ(format_number(-0.0), "0");
    EXPECT_EQ(format_number(1.0), "1");
    EXPECT_EQ(format_number(0.1), "0.1");
    EXPECT_EQ(format_number(2.0 / 3.0), "0.666666666667");
    EXPECT_EQ(format_number(123456789012345.0), "1.23456789012e+14");
    EXPECT_EQ(format_number(1e-20), "1e-20");
}

TEST(WriteCsv, EmptyIsHeaderOnly) {
    std::ostringstream os;
    write_csv({}, os);
    EXPECT_EQ(os.str(), "T,g,q0,q1,q2,q3,negativity,witness,witness_violated\n");
}

TEST(WriteCsv, OneRowIsTwoLines) {
    SweepRow r;
    r.temperature = 0.5;
    r.g = 0.25;
    r.q = {0.25, 0.25, 0.25, 0.25};
    r.negativity = 0.0;
    r.witness = 0.75;
    r.witness_violated = true;
    std::ostringstream os;
    write_csv({r}, os);
    EXPECT_EQ(os.str(),
              "T,g,q0,q1,q2,q3,negativity,witness,witness_violated\n"
              "0.5,0.25,0.25,0.25,0.25,0.25,0,0.75,1\n");
}

TEST(WriteCsv, ReparsesIntoValidRows) {
    const auto path = scratch("reparse.csv");
    const SweepGrid grid{0.0, 2.0, 6, 0.0, 2.0, 5};
    const auto rows = sweep_phase_diagram(grid, {}, 2);
    write_csv(rows, path.string());
    const auto back = read_csv(path.string());
    ASSERT_EQ(back.size(), rows.size());
    for (std::size_t k = 0; k < rows.size(); ++k) {
        EXPECT_NEAR(back[k].temperature, rows[k].temperature, 1e-11);
        EXPECT_NEAR(back[k].g, rows[k].g, 1e-11);
        double s = 0.0;
        for (int j = 0; j < 4; ++j) {
            EXPECT_NEAR(back[k].q[j], rows[k].q[j], 1e-11);
            EXPECT_GE(back[k].q[j], 0.0);
            s += back[k].q[j];
        }
        EXPECT_NEAR(s, 1.0, 1e-10);
        EXPECT_GE(back[k].negativity, 0.0);
        EXPECT_LE(back[k].negativity, 0.5 + 1e-12);
        EXPECT_GE(back[k].witness, 0.0);
        EXPECT_EQ(back[k].witness_violated, witness_violated(back[k].witness, 2));
    }
}

TEST(WriteCsv, SweepCommandIsByteIdenticalAcrossRuns) {
    const auto a = scratch("a.csv"), b = scratch("b.csv");
    const std::vector<std::string> base{"sweep", "--grid-T", "0:2:41", "--grid-g", "0:2:41", "--out"};
    auto args_a = base, args_b = base;
    args_a.push_back(a.string());
    args_b.push_back(b.string());
    args_b.insert(args_b.end(), {"--threads", "3"});
    ASSERT_EQ(run(args_a), 0);
    ASSERT_EQ(run(args_b), 0);
    const std::string text = slurp(a);
    EXPECT_EQ(text, slurp(b));
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 1682);
    EXPECT_EQ(text.back(), '\n');
}

TEST(ReadCsv, RejectsMalformedFiles) {
    const auto path = scratch("bad.csv");
    {
        std::ofstream f(path);
        f << "T,g,q0,q1,q2,q3,negativity,witness,witness_violated\n1,2,3\n";
    }
    EXPECT_THROW(read_csv(path.string()), thermores::Error);
    {
        std::ofstream f(path);
        f << "wrong header\n";
    }
    EXPECT_THROW(read_csv(path.string()), thermores::Error);
}

}  // namespace
}  // namespace thermores::cli
