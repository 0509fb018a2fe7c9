#include "experiment.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace lorentz::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("lorentz_cli_test_" + name);
    fs::remove_all(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
    std::vector<std::vector<std::string>> rows;
    std::ifstream in(p);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) row.push_back(cell);
        rows.push_back(row);
    }
    return rows;
}

std::size_t column(const std::vector<std::string>& header, const std::string& name) {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return i;
    }
    ADD_FAILURE() << "no column " << name;
    return 0;
}

int run_args(std::vector<std::string> args) {
    args.insert(args.begin(), "lorentz");
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    return main_entry(static_cast<int>(argv.size()), argv.data());
}

ExperimentConfig rotation_config(const fs::path& out) {
    ExperimentConfig c;
    c.experiment = "rotation-set";
    c.n = 5;
    c.r = 0.04;
    c.T = 100;
    c.samples = 300;
    c.seed = 7;
    c.output = out.string();
    return c;
}

}  // namespace

TEST(Cli, InvalidRadiusNamesPrecondition) {
    auto c = rotation_config(scratch("bad_r"));
    c.r = 0.3;
    std::ostringstream log;
    EXPECT_EQ(run(c, log), kExitConfig);
    EXPECT_NE(log.str().find("r < 1/(2n)"), std::string::npos) << log.str();
    EXPECT_FALSE(fs::exists(c.output));
}

TEST(Cli, InvalidConfigsExitTwo) {
    std::ostringstream log;
    auto c = rotation_config(scratch("bad"));
    c.n = 0;
    EXPECT_EQ(run(c, log), kExitConfig);
    c = rotation_config(scratch("bad"));
    c.T = -1;
    EXPECT_EQ(run(c, log), kExitConfig);
    c = rotation_config(scratch("bad"));
    c.r_rule = "1/(4n)";
    EXPECT_EQ(run(c, log), kExitConfig);
    c = rotation_config(scratch("bad"));
    c.experiment = "nonsense";
    EXPECT_EQ(run(c, log), kExitConfig);
    c = rotation_config(scratch("bad"));
    c.experiment = "orbit";
    c.r.reset();
    c.n = 10;
    c.word = "a";
    c.speed = 0.44;
    log.str("");
    EXPECT_EQ(run(c, log), kExitConfig);
    EXPECT_NE(log.str().find("1/sqrt 5 - 0.5/n"), std::string::npos) << log.str();
}

TEST(Cli, UnknownJsonKeyIsRejected) {
    EXPECT_THROW(config_from_json(nlohmann::json{{"n", 5}, {"foo", 1}}), ConfigError);
}

TEST(Cli, JsonRoundTrip) {
    auto c = rotation_config("x");
    c.ns = {4, 8};
    const auto back = config_from_json(config_to_json(c));
    EXPECT_EQ(config_to_json(back), config_to_json(c));
}

TEST(Cli, ZeroSamplesGivesHeaderOnly) {
    auto c = rotation_config(scratch("zero"));
    c.samples = 0;
    std::ostringstream log;
    ASSERT_EQ(run(c, log), kExitOk) << log.str();
    const auto rows = read_csv(fs::path(c.output) / "rotation_set.csv");
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_EQ(rows[0][0], "seed");
}

TEST(Cli, SameSeedSameBytesAcrossThreadCounts) {
    auto a = rotation_config(scratch("det_a"));
    auto b = rotation_config(scratch("det_b"));
    auto d = rotation_config(scratch("det_d"));
    a.threads = 1;
    b.threads = 1;
    d.threads = 4;
    std::ostringstream log;
    ASSERT_EQ(run(a, log), kExitOk);
    ASSERT_EQ(run(b, log), kExitOk);
    ASSERT_EQ(run(d, log), kExitOk);
    const auto ra = slurp(fs::path(a.output) / "rotation_set.csv");
    EXPECT_FALSE(ra.empty());
    EXPECT_EQ(ra, slurp(fs::path(b.output) / "rotation_set.csv"));
    EXPECT_EQ(ra, slurp(fs::path(d.output) / "rotation_set.csv"));
}

TEST(Cli, RotationSetSpeedsAreBounded) {
    auto c = rotation_config(scratch("speed"));
    c.T = 300;
    std::ostringstream log;
    ASSERT_EQ(run(c, log), kExitOk) << log.str();
    const auto rows = read_csv(fs::path(c.output) / "rotation_set.csv");
    ASSERT_EQ(rows.size(), c.samples + 1);
    const auto s = column(rows[0], "speed");
    for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_LE(std::stod(rows[i][s]), 2.0 * std::sqrt(2.0) + 0.05);
    EXPECT_TRUE(fs::exists(fs::path(c.output) / "speed_histogram.svg"));
    const auto manifest = nlohmann::json::parse(slurp(fs::path(c.output) / "manifest.json"));
    EXPECT_EQ(manifest["experiment"], "rotation-set");
    EXPECT_EQ(manifest["config"]["seed"], 7);
}

TEST(Cli, PassagesHasFourCases) {
    const auto out = scratch("passages");
    ASSERT_EQ(run_args({"passages", "--n", "16", "--out", out.string()}), kExitOk);
    const auto rows = read_csv(out / "passages.csv");
    ASSERT_EQ(rows.size(), 5u);
    const auto t = column(rows[0], "time");
    const auto k = column(rows[0], "constant");
    for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_LE(std::stod(rows[i][t]), std::stod(rows[i][k]) + 1e-9);
}

TEST(Cli, FlagsOverrideJsonFile) {
    const auto out = scratch("override");
    const auto cfg = fs::temp_directory_path() / "lorentz_cli_test_config.json";
    std::ofstream(cfg) << R"({"n": 5, "r": 0.04, "T": 400, "samples": 50, "seed": 3})";
    ASSERT_EQ(run_args({"entropy", "--config", cfg.string(), "--samples", "80", "--out", out.string()}), kExitOk);
    const auto manifest = nlohmann::json::parse(slurp(out / "manifest.json"));
    EXPECT_EQ(manifest["config"]["samples"], 80);
    EXPECT_EQ(manifest["config"]["seed"], 3);
    const auto rows = read_csv(out / "entropy.csv");
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[1][column(rows[0], "samples")], "80");
}

TEST(Cli, CommandLineErrorsExitTwo) {
    EXPECT_EQ(run_args({}), kExitConfig);
    EXPECT_EQ(run_args({"rotation-set", "--r", "0.01", "--r-rule", "1/(4n)"}), kExitConfig);
    EXPECT_EQ(run_args({"rotation-set", "--n", "two"}), kExitConfig);
}

TEST(Cli, TooFewCollisionsIsNumericalFailure) {
    auto c = rotation_config(scratch("few"));
    c.experiment = "lyapunov";
    c.T = 5;
    c.samples = 10;
    std::ostringstream log;
    EXPECT_EQ(run(c, log), kExitNumerical);
    EXPECT_NE(log.str().find("need 10000"), std::string::npos) << log.str();
}
