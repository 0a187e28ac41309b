#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include <gtest/gtest.h>

#include "cli.hpp"

using namespace leeyang;
using namespace leeyang::cli;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("leeyang_cli_" + std::to_string(::getpid()) + "_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

int run_json(json j, const fs::path& out) {
  j["outputDir"] = out.string();
  std::ostringstream log;
  return run(parse_config(j), log);
}

}  // namespace

TEST(Cli, VerifyCoveredGridIsVerified) {
  const auto out = scratch("verify");
  const json j{{"command", "verify"},
               {"measure", {{"kind", "sphere"}, {"radius", 1.0}}},
               {"D", {2, 4}},
               {"N", {2, 3, 4}},
               {"J", {0.5}},
               {"ladder", {30, 40}},
               {"jobs", 2}};
  EXPECT_EQ(run_json(j, out), 0);
  const auto report = json::parse(slurp(out / "report.json"));
  EXPECT_EQ(report.at("schema"), 1);
  ASSERT_EQ(report.at("verdicts").size(), 6u);
  for (const auto& v : report.at("verdicts")) {
    EXPECT_EQ(v.at("verdict"), "LeeYangVerified");
    EXPECT_EQ(v.at("guarantee"), "theorem-covered");
  }
  EXPECT_TRUE(report.contains("versions"));
  EXPECT_TRUE(report.at("timings").contains("total_seconds"));
  EXPECT_TRUE(fs::exists(out / "zeros_3_4_0.5.csv"));
  const auto sidecar = json::parse(slurp(out / "zeros_3_4_0.5.json"));
  EXPECT_EQ(sidecar.at("config_hash"), report.at("config_hash"));
  fs::remove_all(out);
}

TEST(Cli, OddDimensionIsLabelledOutsideGuarantee) {
  const auto out = scratch("odd");
  const json j{{"command", "sweep"}, {"D", {3}}, {"N", {2}}, {"J", 0.5}, {"ladder", {24, 32}}};
  EXPECT_EQ(run_json(j, out), 0);
  const auto report = json::parse(slurp(out / "report.json"));
  for (const auto& v : report.at("verdicts")) EXPECT_EQ(v.at("guarantee"), "outside theorem guarantee");
  EXPECT_TRUE(fs::exists(out / "phi_2_3_0.5.csv"));
  EXPECT_TRUE(report.contains("class_evidence"));
  fs::remove_all(out);
}

TEST(Cli, MalformedConfigExitsTwoWithoutArtifacts) {
  const auto dir = scratch("malformed");
  fs::create_directories(dir);
  const auto cfg = dir / "bad.json";
  std::ofstream(cfg) << "{\"command\": \"phi\", ";
  const auto out = dir / "out";
  std::string a0 = "leeyang", a1 = "--config", a2 = cfg.string(), a3 = "--out", a4 = out.string();
  char* argv[] = {a0.data(), a1.data(), a2.data(), a3.data(), a4.data()};
  EXPECT_EQ(main_entry(5, argv), 2);
  EXPECT_FALSE(fs::exists(out));
  fs::remove_all(dir);
}

TEST(Cli, UnknownCommandLineOptionExitsTwo) {
  std::string a0 = "leeyang", a1 = "phi", a2 = "--bogus";
  char* argv[] = {a0.data(), a1.data(), a2.data()};
  EXPECT_EQ(main_entry(3, argv), 2);
}

TEST(Cli, ConfigValidation) {
  const json base{{"command", "zeros"}};
  EXPECT_NO_THROW(parse_config(base));
  EXPECT_THROW(parse_config(json::array()), ConfigError);
  EXPECT_THROW(parse_config(json{{"command", "dance"}}), ConfigError);
  EXPECT_THROW(parse_config(json{{"command", "zeros"}, {"colour", 1}}), ConfigError);
  EXPECT_THROW(parse_config(json{{"command", "zeros"}, {"ladder", {40, 30}}}), ConfigError);
  EXPECT_THROW(parse_config(json{{"command", "zeros"}, {"ladder", {40}}}), ConfigError);
  EXPECT_THROW(parse_config(json{{"command", "zeros"}, {"N", json::array()}}), ConfigError);
  EXPECT_THROW(parse_config(json{{"command", "zeros"}, {"D", {0}}}), ConfigError);
  EXPECT_THROW(parse_config(json{{"command", "zeros"}, {"J", "x/y"}}), ConfigError);
  EXPECT_THROW(parse_config(json{{"command", "zeros"}, {"measure", {{"kind", "sphere"}, {"radius", -1}}}}),
               ConfigError);
  EXPECT_THROW(parse_config(json{{"command", "zeros"}, {"tolerances", {{"root", 0}}}}), ConfigError);
  EXPECT_THROW(parse_config(json{{"command", "zeros"}, {"backend", "rational"}}), ConfigError);
  EXPECT_THROW(parse_config(json{{"command", "phi"}, {"backend", "rational"}, {"D", {3}}}), ConfigError);
  EXPECT_THROW(parse_config(json{{"command", "oracle-compare"}, {"N", {5}}}), ConfigError);
  EXPECT_THROW(parse_config(json{{"command", "zeros"}, {"ladder", {30, 500}}}), ConfigError);
}

TEST(Cli, OverridesTakePrecedence) {
  Overrides ov;
  ov.command = "phi";
  ov.seed = 42;
  ov.backend = "rational";
  const auto cfg = parse_config(json{{"command", "zeros"}, {"seed", 1}, {"M", 10}}, ov);
  EXPECT_EQ(cfg.command, Command::Phi);
  EXPECT_EQ(cfg.seed, 42u);
  EXPECT_EQ(cfg.backend, Backend::Rational);
}

TEST(Cli, HashIgnoresOutputLocation) {
  const auto a = parse_config(json{{"command", "phi"}, {"outputDir", "a"}});
  const auto b = parse_config(json{{"command", "phi"}, {"outputDir", "b"}, {"jobs", 3}});
  const auto c = parse_config(json{{"command", "phi"}, {"J", 0.25}});
  EXPECT_EQ(config_hash(a.canonical), config_hash(b.canonical));
  EXPECT_NE(config_hash(a.canonical), config_hash(c.canonical));
}

TEST(Cli, ArtifactsAreDeterministic) {
  const auto out1 = scratch("det1");
  const auto out2 = scratch("det2");
  const json j{{"command", "phi"},        {"D", {2, 4}},  {"N", {1, 2, 3}}, {"J", {0.5, 1}},
               {"ladder", {20, 28}},      {"oracle", true}, {"samples", 100000}};
  EXPECT_EQ(run_json(j, out1), 0);
  auto k = j;
  k["jobs"] = 1;
  EXPECT_EQ(run_json(k, out2), 0);
  int compared = 0;
  for (const auto& e : fs::directory_iterator(out1)) {
    if (e.path().extension() != ".csv") continue;
    EXPECT_EQ(slurp(e.path()), slurp(out2 / e.path().filename())) << e.path();
    ++compared;
  }
  EXPECT_GE(compared, 12);
  EXPECT_TRUE(fs::exists(out1 / "oracle_2_4_0.5.csv"));
  fs::remove_all(out1);
  fs::remove_all(out2);
}

TEST(Cli, RationalPhiArtifacts) {
  const auto out = scratch("rational");
  const json j{{"command", "phi"}, {"D", {2}}, {"N", {2}}, {"J", {"1/3"}}, {"M", 4}, {"backend", "rational"}};
  EXPECT_EQ(run_json(j, out), 0);
  ASSERT_TRUE(fs::exists(out / "phi_2_2_1_3.csv"));
  const auto meta = json::parse(slurp(out / "phi_2_2_1_3.json"));
  EXPECT_EQ(meta.at("J_exact"), "1/3");
  EXPECT_EQ(meta.at("pi_power"), 2);
  fs::remove_all(out);
}

TEST(Cli, GeometryAndCounterexampleCommands) {
  const auto out = scratch("misc");
  EXPECT_EQ(run_json(json{{"command", "geometry-selftest"}}, out), 0);
  EXPECT_EQ(json::parse(slurp(out / "geometry_selftest.json")).at("passed"), true);
  EXPECT_EQ(run_json(json{{"command", "counterexample-scan"}, {"scan", {{"aMin", 0}, {"aMax", 3}, {"step", 1}}}}, out), 0);
  const auto scan = json::parse(slurp(out / "counterexample_scan.json"));
  EXPECT_FALSE(scan.at("violating").empty());
  fs::remove_all(out);
}

TEST(Cli, NumericFailureIsReportedNotThrown) {
  const auto out = scratch("numeric");
  // Direct summation of w_D at ζ = −4·10⁴ exceeds the series term cap.
  const json j{{"command", "laplace"}, {"D", {2}}, {"M", 6}, {"oracle", true}, {"y", {200.0}}};
  EXPECT_EQ(run_json(j, out), 0);
  const auto report = json::parse(slurp(out / "report.json"));
  ASSERT_EQ(report.at("errors").size(), 1u);
  EXPECT_NE(report.at("errors")[0].at("error").get<std::string>().find("cancellation"), std::string::npos);
  EXPECT_TRUE(fs::exists(out / "laplace_2.csv"));
  fs::remove_all(out);
}
