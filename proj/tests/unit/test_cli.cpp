#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "skewlab/error.hpp"
#include "skewlab/experiment.hpp"
#include "skewlab/verify/golden.hpp"

using namespace skewlab;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("skewlab_test_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path write_config(const fs::path& dir, const Json& j) {
  const fs::path p = dir / "config.json";
  std::ofstream(p) << j.dump(2);
  return p;
}

Json base_config(const std::string& command, Json params = Json::object()) {
  return Json{{"schema_version", 1},
              {"system", {{"k", 2}, {"tau", {{"cos", {1.0}}}}}},
              {"noise", {{"seed", 7}, {"J", 64}, {"map_basis", {"sin1"}}, {"ceiling_basis", {"sin1"}}, {"epsilon", 0.01}}},
              {"command", {{"name", command}, {"params", params}}}};
}

}  // namespace

TEST(Config, RoundTrip) {
  const auto cfg = ExperimentConfig::from_json(base_config("lyapunov", {{"nu", {1, 2}}, {"n_max", 6}}));
  const auto again = ExperimentConfig::from_json(Json::parse(cfg.to_json().dump()));
  EXPECT_EQ(cfg, again);
  EXPECT_EQ(again.params["n_max"], 6);
  EXPECT_EQ(again.params["cutoff"], 32);
  EXPECT_EQ(again.noise.seed, 7u);
  EXPECT_EQ(again.make_family().dimension(), 2);
  EXPECT_EQ(again.make_system(), doubling_cosine());
}

TEST(Config, Rejections) {
  Json j = base_config("spectrum");
  j["extra"] = 1;
  EXPECT_THROW(ExperimentConfig::from_json(j), ConfigError);

  j = base_config("spectrum", {{"bogus", 1}});
  EXPECT_THROW(ExperimentConfig::from_json(j), ConfigError);

  j = base_config("captivity", {{"n_max", 2.5}});
  EXPECT_THROW(ExperimentConfig::from_json(j), ConfigError);
  j = base_config("spectrum", {{"m", 3}});
  EXPECT_NO_THROW(ExperimentConfig::from_json(j));

  j = base_config("spectrum");
  j["noise"]["map_basis"] = {"tan1"};
  EXPECT_THROW(ExperimentConfig::from_json(j), ConfigError);
  j["noise"]["map_basis"] = {"sin0"};
  EXPECT_THROW(ExperimentConfig::from_json(j), ConfigError);

  j = base_config("spectrum");
  j["noise"]["d"] = 3;
  EXPECT_THROW(ExperimentConfig::from_json(j), ConfigError);

  j = base_config("spectrum");
  j["schema_version"] = 2;
  EXPECT_THROW(ExperimentConfig::from_json(j), ConfigError);

  j = base_config("no-such-command");
  EXPECT_THROW(ExperimentConfig::from_json(j), ConfigError);
}

TEST(Config, BasisFunctions) {
  const auto u = basis_function("cos3", true);
  EXPECT_NEAR(u.cos_coeff(3), 1.0 / (3 * kTwoPi), 1e-15);
  EXPECT_NEAR(u.sup_abs(1), 1.0, 1e-9);
  EXPECT_EQ(basis_function("sin2", false), TrigPolynomial::sine(2, 1.0));
}

TEST(Run, SpectrumOfDoubling) {
  Json j = base_config("spectrum");
  j["system"]["tau"] = Json::object();
  j["noise"] = Json::object();
  const auto out = run_experiment(ExperimentConfig::from_json(j));
  ASSERT_EQ(out.exit_code, 0);
  const auto& eig = out.report["results"]["spectra"][0]["eigenvalues"];
  EXPECT_NEAR(eig[0]["value"][0].get<double>(), 1.0, 1e-12);
  for (std::size_t i = 1; i < eig.size(); ++i)
    EXPECT_LE(std::hypot(eig[i]["value"][0].get<double>(), eig[i]["value"][1].get<double>()), 1e-10);
  EXPECT_TRUE(out.tables.count("eigenvalues.csv"));
}

TEST(Run, CaptivityOfConstantCeiling) {
  Json j = base_config("captivity", {{"n_max", 8}});
  j["system"]["tau"] = {{"constant", 1.0}};
  j["noise"] = Json::object();
  const fs::path dir = scratch("captivity");
  ASSERT_EQ(run_command("captivity", write_config(dir, j).string(), (dir / "out").string()), 0);
  std::ifstream csv(dir / "out" / "captivity.csv");
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "n,N,logN_over_n");
  int rows = 0;
  while (std::getline(csv, line)) {
    const double rate = std::stod(line.substr(line.rfind(',') + 1));
    EXPECT_NEAR(rate, std::log(2.0), 1e-12);
    ++rows;
  }
  EXPECT_EQ(rows, 8);
}

TEST(Run, RerunsAreByteIdentical) {
  const fs::path dir = scratch("rerun");
  const auto cfg = write_config(dir, base_config("correlations", {{"n_max", 6}}));
  ASSERT_EQ(run_command("correlations", cfg.string(), (dir / "a").string()), 0);
  ASSERT_EQ(run_command("correlations", cfg.string(), (dir / "b").string()), 0);
  for (const char* f : {"report.json", "correlations.csv"})
    EXPECT_EQ(slurp(dir / "a" / f), slurp(dir / "b" / f)) << f;
  EXPECT_TRUE(fs::exists(dir / "a" / "timing.json"));
}

TEST(Run, ExitCodes) {
  const fs::path dir = scratch("exit");
  std::string message;
  EXPECT_EQ(run_command("spectrum", (dir / "missing.json").string(), (dir / "o").string(), std::nullopt, &message), 1);
  EXPECT_FALSE(message.empty());

  const auto cfg = write_config(dir, base_config("density", {{"tol", 1e-30}, {"n_pullback", 2}}));
  EXPECT_EQ(run_command("spectrum", cfg.string(), (dir / "o").string()), 1);
  EXPECT_EQ(run_command("density", cfg.string(), (dir / "o").string(), std::nullopt, &message), 2);
  const Json report = Json::parse(slurp(dir / "o" / "report.json"));
  EXPECT_EQ(report["status"], "numerical-failure");
  EXPECT_TRUE(report.contains("error"));
}

TEST(Run, SeedOverride) {
  const fs::path dir = scratch("seed");
  const auto cfg = write_config(dir, base_config("density"));
  ASSERT_EQ(run_command("density", cfg.string(), (dir / "a").string(), 99), 0);
  const Json report = Json::parse(slurp(dir / "a" / "report.json"));
  EXPECT_EQ(report["config"]["noise"]["seed"], 99);
  ASSERT_EQ(run_command("density", cfg.string(), (dir / "b").string()), 0);
  EXPECT_NE(slurp(dir / "a" / "density.csv"), slurp(dir / "b" / "density.csv"));
}

TEST(Binary, RunAndVersion) {
  const fs::path dir = scratch("binary");
  const auto cfg = write_config(dir, base_config("transversality", {{"n_max", 4}}));
  const std::string cli = SKEWLAB_CLI_PATH;
  const auto run = [](const std::string& cmd) {
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  };
  EXPECT_EQ(run(cli + " run transversality --config " + cfg.string() + " --out " + (dir / "o").string() +
                " --threads 2 > /dev/null 2>&1"),
            0);
  EXPECT_TRUE(fs::exists(dir / "o" / "transversality.csv"));
  EXPECT_EQ(run(cli + " version > /dev/null"), 0);
  EXPECT_NE(run(cli + " run spectrum --config " + (dir / "nope.json").string() + " --out x > /dev/null 2>&1"), 0);
  EXPECT_NE(run(cli + " frobnicate > /dev/null 2>&1"), 0);
}

TEST(Golden, CommittedBaselinesMatch) {
  const auto rep = verify::check_golden(SKEWLAB_GOLDEN_DIR, false);
  for (const auto& line : rep.lines) SCOPED_TRACE(line);
  EXPECT_TRUE(rep.passed);
  EXPECT_EQ(rep.created, 0);
}

TEST(Golden, TamperingIsDetected) {
  const fs::path dir = scratch("golden");
  const auto first = verify::check_golden(dir.string(), true);
  ASSERT_TRUE(first.passed);
  ASSERT_GT(first.created, 0);
  EXPECT_TRUE(verify::check_golden(dir.string(), false).passed);

  const fs::path victim = dir / "bessel_adjoint_nu2.csv";
  std::string text = slurp(victim);
  const auto row = text.find('\n') + 1;
  const auto comma = text.find(',', text.find(',', row) + 1) + 1;  // third column of the first data row
  const auto end = text.find_first_of(",\n", comma);
  text.replace(comma, end - comma, "0.123456789");
  std::ofstream(victim, std::ios::binary) << text;
  EXPECT_FALSE(verify::check_golden(dir.string(), false).passed);
}
