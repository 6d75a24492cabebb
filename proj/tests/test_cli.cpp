#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "polya/cli.hpp"

using namespace polya;
using namespace polya::cli;

namespace {
const char* gue4 = R"({"space":"H2","n":4,"weight":{"family":"gaussian","variance":1.0},"shift":null})";
const char* wishart_fixed =
    R"({"space":"M","n":3,"nu":1,"weight":{"family":"laguerre_m","scale":1.0},"shift":{"type":"fixed","x":[0.5,1.5,3.0]}})";

struct Outcome {
    int code;
    std::string out, log;
};
Outcome run(const std::string& cmd, const RunConfig& cfg) {
    std::ostringstream out, log;
    const int code = run_command(cmd, cfg, out, log);
    return {code, out.str(), log.str()};
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> v;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);) v.push_back(l);
    return v;
}

std::string config_error(const std::string& json) {
    try {
        parse_config(json);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}
}  // namespace

TEST(ParseConfig, Examples) {
    const RunConfig a = parse_config(gue4);
    ASSERT_TRUE(a.ensemble.has_value());
    EXPECT_EQ(a.ensemble->weight, WeightSpec::gaussian(4, 1.0));
    EXPECT_EQ(a.ensemble->shift.mode, ShiftConfig::Mode::none);

    const RunConfig b = parse_config(wishart_fixed);
    EXPECT_EQ(b.ensemble->space(), Space::M);
    EXPECT_EQ(b.ensemble->nu(), 1.0);
    EXPECT_EQ(b.ensemble->shift.x, (std::vector<double>{0.5, 1.5, 3.0}));

    const std::string msg = config_error(R"({"space":"M","n":3,"nu":0.3,"weight":{"family":"laguerre_m","scale":1.0},"shift":null})");
    EXPECT_NE(msg.find("nu must be -0.5, 0.5, or a nonnegative integer"), std::string::npos) << msg;
}

TEST(ParseConfig, UnknownKeysNamePath) {
    EXPECT_NE(config_error(R"({"space":"H2","n":2,"weight":{"family":"gaussian","varience":1.0}})").find("$.weight.varience"), std::string::npos);
    EXPECT_NE(config_error(R"({"space":"H2","n":2,"weight":{"family":"gaussian"},"extra":1})").find("$.extra"), std::string::npos);
    EXPECT_NE(config_error(R"({"space":"H2","n":2,"weight":{"family":"gaussian"},"run":{"seeed":3}})").find("$.run.seeed"), std::string::npos);
}

TEST(ParseConfig, SchemaViolations) {
    EXPECT_FALSE(config_error(R"({"space":"H3","n":2,"weight":{"family":"gaussian"}})").empty());
    EXPECT_FALSE(config_error(R"({"space":"H2","n":0,"weight":{"family":"gaussian"}})").empty());
    EXPECT_FALSE(config_error(R"({"space":"H2","n":2,"weight":{"family":"gaussian","variance":-1}})").empty());
    EXPECT_FALSE(config_error(R"({"space":"H2","n":2,"weight":{"family":"gaussian"},"shift":{"type":"fixed","x":[1,1]}})").empty());
    EXPECT_FALSE(config_error(R"({"space":"H2","n":2,"weight":{"family":"gaussian"},"run":{"grid":"1:0:5"}})").empty());
    EXPECT_FALSE(config_error(R"({"space":"H2","n":2,"weight":{"family":"gaussian"},"run":{"tolerance":0}})").empty());
    EXPECT_FALSE(config_error("{not json").empty());
    EXPECT_THROW(parse_config("/nonexistent/config.json"), IoError);
}

TEST(ParseConfig, RoundTrip) {
    const std::vector<std::string> docs{
        gue4,
        wishart_fixed,
        R"({"space":"H2","n":3,"weight":{"family":"polya_product","gamma":0.3,"deltas":[0.2,-0.1,0.15],"support":"real"},
            "shift":{"type":"ensemble","ensemble":{"weight":{"family":"gaussian","variance":0.5},"shift":{"type":"fixed","x":[-1,0,1]}}},
            "run":{"grid":"-4:4:9","tolerance":1e-6,"seed":9,"count":1000,"bins":20,"range":[-5,5],"route":"contour",
                   "toeplitz":{"n":5,"L":2,"trials":10},"out":"x.csv"}})",
        R"({"space":"M","n":2,"nu":-0.5,"weight":{"family":"polya_product_m","deltas":[0.1,0.2],"shift":0.5}})",
        R"({"space":"H2","n":2,"weight":{"family":"laguerre_h2","nu":1.5}})",
        R"({"space":"H2","n":2,"weight":{"family":"polya_product","gamma":0,"deltas":[0.3,0.2,0.1],"support":"positive"}})",
    };
    for (const std::string& d : docs) {
        const RunConfig cfg = parse_config(d);
        const std::string text = serialize(cfg);
        EXPECT_EQ(parse_config(text), cfg) << text;
        EXPECT_EQ(serialize(parse_config(text)), text);
    }
    const EnsembleConfig e = parse_ensemble_json(wishart_fixed);
    EXPECT_EQ(parse_ensemble_json(serialize(e)), e);
}

TEST(ParseConfig, FromFile) {
    const auto path = std::filesystem::temp_directory_path() / "polya_cli_test_config.json";
    std::ofstream(path) << gue4;
    EXPECT_EQ(parse_config(path.string()), parse_config(gue4));
    std::filesystem::remove(path);
}

TEST(Grid, ParseAndPrint) {
    const Grid g = parse_grid("-6:6:201");
    EXPECT_EQ(g.a, -6.0);
    EXPECT_EQ(g.b, 6.0);
    EXPECT_EQ(g.m, 201);
    EXPECT_EQ(parse_grid(to_string(g)), g);
    EXPECT_THROW(parse_grid("1:2:1"), ConfigError);
    EXPECT_THROW(parse_grid("2:1:5"), ConfigError);
    EXPECT_THROW(parse_grid("abc"), ConfigError);
}

TEST(CsvNumber, SeventeenDigits) {
    EXPECT_EQ(std::stod(csv_number(0.1)), 0.1);
    EXPECT_EQ(std::stod(csv_number(1.0 / 3.0)), 1.0 / 3.0);
    EXPECT_EQ(csv_number(2.0).find(','), std::string::npos);
}

TEST(Commands, Names) {
    const std::vector<std::string> want{"density", "kernel", "biorth-check", "toeplitz-check", "mc-compare", "convolve-check"};
    EXPECT_EQ(command_names(), want);
}

TEST(Commands, DensityGue) {
    RunConfig cfg = parse_config(gue4);
    cfg.grid = parse_grid("-6:6:201");
    const Outcome r = run("density", cfg);
    EXPECT_EQ(r.code, ok);
    const auto rows = lines(r.out);
    ASSERT_EQ(rows.size(), 202u);
    EXPECT_EQ(rows[0], "y,R1");
    double mass = 0.0, prev_y = 0.0, prev_r = 0.0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto comma = rows[i].find(',');
        const double y = std::stod(rows[i].substr(0, comma)), dens = std::stod(rows[i].substr(comma + 1));
        if (i > 1) mass += 0.5 * (y - prev_y) * (dens + prev_r);
        prev_y = y;
        prev_r = dens;
    }
    EXPECT_NEAR(mass, 4.0, 1e-3);
}

TEST(Commands, DensityToleranceFailureIsAccuracyExit) {
    RunConfig cfg = parse_config(gue4);
    cfg.grid = parse_grid("-1:1:11");
    cfg.tolerance = 1e-3;
    EXPECT_EQ(run("density", cfg).code, accuracy);
}

TEST(Commands, KernelCsv) {
    RunConfig cfg = parse_config(wishart_fixed);
    cfg.grid = parse_grid("0.5:4:4");
    const Outcome r = run("kernel", cfg);
    EXPECT_EQ(r.code, ok);
    const auto rows = lines(r.out);
    ASSERT_EQ(rows.size(), 17u);
    EXPECT_EQ(rows[0], "yp,y,K");
}

TEST(Commands, BiorthCheckLaguerre) {
    const RunConfig cfg = parse_config(R"({"space":"M","n":5,"nu":2,"weight":{"family":"laguerre_m","scale":1.0}})");
    const Outcome r = run("biorth-check", cfg);
    EXPECT_EQ(r.code, ok);
    const std::string all = r.out + r.log;
    const auto pos = all.find("max |G-I| = ");
    ASSERT_NE(pos, std::string::npos);
    EXPECT_LT(std::stod(all.substr(pos + 12)), 1e-7);
}

TEST(Commands, ToeplitzCheck) {
    RunConfig cfg;
    cfg.toeplitz_n = 6;
    cfg.toeplitz_L = 3;
    cfg.trials = 100;
    cfg.seed = 7;
    const Outcome r = run("toeplitz-check", cfg);
    EXPECT_EQ(r.code, ok);
    EXPECT_NE((r.out + r.log).find("max"), std::string::npos);
}

TEST(Commands, MissingEnsembleIsUsage) {
    EXPECT_EQ(run("density", RunConfig{}).code, usage);
    EXPECT_EQ(run("no-such-command", parse_config(gue4)).code, usage);
}

TEST(Commands, McCompareByteIdentical) {
    RunConfig cfg = parse_config(gue4);
    cfg.count = 4000;
    cfg.bins = 20;
    cfg.range = std::make_pair(-6.0, 6.0);
    cfg.seed = 5;
    const Outcome a = run("mc-compare", cfg), b = run("mc-compare", cfg);
    EXPECT_EQ(a.code, ok);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(lines(a.out)[0], "bin_lo,bin_hi,empirical,analytic,poisson_sigma");
    EXPECT_EQ(lines(a.out).size(), 21u);
    EXPECT_NE(a.log.find("PASS"), std::string::npos);
    cfg.seed = 6;
    EXPECT_NE(run("mc-compare", cfg).out, a.out);
}

TEST(Commands, DensityByteIdentical) {
    const RunConfig cfg = parse_config(wishart_fixed);
    EXPECT_EQ(run("density", cfg).out, run("density", cfg).out);
}

TEST(Commands, ConvolveCheckGaussian) {
    RunConfig cfg = parse_config(
        R"({"space":"H2","n":3,"weight":{"family":"gaussian","variance":1.0},
            "shift":{"type":"ensemble","ensemble":{"weight":{"family":"gaussian","variance":2.0}}}})");
    cfg.grid = parse_grid("-3:3:5");
    EXPECT_EQ(run("convolve-check", cfg).code, ok);
}

TEST(Commands, WritesToOutPath) {
    RunConfig cfg = parse_config(gue4);
    cfg.grid = parse_grid("-2:2:5");
    const auto path = std::filesystem::temp_directory_path() / "polya_cli_density.csv";
    cfg.out = path.string();
    EXPECT_EQ(run("density", cfg).code, ok);
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    EXPECT_EQ(lines(ss.str()).size(), 6u);
    std::filesystem::remove(path);
    cfg.out = "/nonexistent/dir/out.csv";
    EXPECT_EQ(run("density", cfg).code, io);
}

TEST(Svg, DeterministicAndShaped) {
    const std::string density = "y,R1\n-1,0.1\n0,0.4\n1,0.1\n";
    const std::string a = render_svg(density);
    EXPECT_EQ(a, render_svg(density));
    EXPECT_EQ(a.rfind("<svg", 0) == 0 || a.find("<svg") != std::string::npos, true);
    EXPECT_NE(a.find("<polyline"), std::string::npos);
    const std::string mc = "bin_lo,bin_hi,empirical,analytic,poisson_sigma\n0,1,0.2,0.21,0.01\n1,2,0.3,0.29,0.01\n";
    const std::string b = render_svg(mc);
    EXPECT_NE(b.find("<path"), std::string::npos);
    EXPECT_NE(b.find("<polyline"), std::string::npos);
}

TEST(Svg, MalformedInputIsConfigError) {
    EXPECT_THROW(render_svg("y,R1\n"), ConfigError);
    EXPECT_THROW(render_svg(""), ConfigError);
    EXPECT_THROW(render_svg("y,R1\n1,abc\n"), ConfigError);
    EXPECT_THROW(render_svg("y\n1\n2\n"), ConfigError);
}

TEST(Binary, HelpExitsZero) {
    const std::string cmd = std::string(POLYA_EXE) + " --help > /dev/null";
    EXPECT_EQ(std::system(cmd.c_str()), 0);
}
