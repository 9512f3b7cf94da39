#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "weyl/experiments.hpp"

using namespace weyl;

namespace {

RunConfig config(Command c, int n) {
  RunConfig cfg;
  cfg.command = c;
  cfg.n = n;
  return cfg;
}

std::vector<std::string> data_lines(const std::string& csv) {
  std::vector<std::string> out;
  std::istringstream in(csv);
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line[0] != '#') out.push_back(line);
  }
  return out;
}

int run_cli(const std::string& args, const std::string& out_file) {
  const std::string cmd = std::string(WEYL_CLI_PATH) + " " + args + " > " + out_file + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST(CommandNames, RoundTrip) {
  for (const auto c : {Command::verify, Command::commutator, Command::uncertainty, Command::limit,
                       Command::explode, Command::wave, Command::duality_audit}) {
    EXPECT_EQ(command_from_string(to_string(c)), c);
  }
  EXPECT_EQ(to_string(Command::duality_audit), "duality-audit");
  EXPECT_FALSE(command_from_string("fly").has_value());
}

TEST(Verify, AllIdentitiesPassAtFour) {
  const CommandResult r = run_command(config(Command::verify, 4));
  EXPECT_EQ(r.exit_code, kExitPass) << r.message;
  const Json doc = Json::parse(r.report);
  EXPECT_TRUE(doc["all_pass"].get<bool>());
  std::vector<std::string> names;
  for (const auto& row : doc["identities"]) names.push_back(row["identity"].get<std::string>());
  for (const char* expected : {"matrix_unit_product", "idempotent_orthogonality", "idempotent_resolution",
                               "left_ideal_basis", "right_ideal_basis", "position_eigenrelation",
                               "position_translation", "momentum_eigenrelation", "duality_transport"}) {
    EXPECT_NE(std::find(names.begin(), names.end(), expected), names.end()) << expected;
  }
}

TEST(Verify, RejectsNOne) {
  const CommandResult r = run_command(config(Command::verify, 1));
  EXPECT_EQ(r.exit_code, kExitUsage);
  EXPECT_TRUE(r.report.empty());
  EXPECT_EQ(run_command(config(Command::verify, 65)).exit_code, kExitUsage);
}

TEST(Verify, CsvHasOneRowPerIdentity) {
  RunConfig cfg = config(Command::verify, 12);
  cfg.format = OutputFormat::csv;
  const CommandResult r = run_command(cfg);
  EXPECT_EQ(r.exit_code, kExitPass) << r.message;
  EXPECT_EQ(r.extension, "csv");
  const auto lines = data_lines(r.report);
  ASSERT_FALSE(lines.empty());
  EXPECT_EQ(lines.front(), "identity,max_deviation,tolerance,checked,exhaustive,pass");
  EXPECT_EQ(lines.size() - 1, run_identity_suites(AlgebraParams(12), 0).size());
}

TEST(Verify, LargeIndexSpacesAreSampled) {
  const auto checks = run_identity_suites(AlgebraParams(20), 0);
  for (const auto& c : checks) {
    if (c.name == "matrix_unit_product") {
      EXPECT_FALSE(c.exhaustive);
      EXPECT_TRUE(c.pass());
    }
  }
}

TEST(Reports, EmbedConventionsAndVersion) {
  const CommandResult r = run_command(config(Command::commutator, 3));
  const Json doc = Json::parse(r.report);
  EXPECT_EQ(doc["command"], "commutator");
  EXPECT_EQ(doc["n"], 3);
  EXPECT_EQ(doc["tool_version"], std::string(kToolVersion));
  EXPECT_EQ(doc["conventions"]["shift_direction"], "e_0^1|j> = |j-1>");
  EXPECT_EQ(doc["conventions"]["momentum_exp_sign"], 1);
  EXPECT_EQ(doc["conventions"]["position_exp_sign"], 1);

  RunConfig cfg = config(Command::commutator, 3);
  cfg.format = OutputFormat::csv;
  const std::string csv = run_command(cfg).report;
  EXPECT_NE(csv.find("# momentum_exp_sign: 1"), std::string::npos);
  EXPECT_NE(csv.find("# tool_version: "), std::string::npos);
}

TEST(Commutator, MatrixAtTwo) {
  const CommandResult r = run_command(config(Command::commutator, 2));
  EXPECT_EQ(r.exit_code, kExitPass);
  const Json doc = Json::parse(r.report);
  EXPECT_EQ(doc["matrix"][0][1][0].get<double>(), 0.5);
  EXPECT_EQ(doc["matrix"][1][0][0].get<double>(), -0.5);
  EXPECT_GT(doc["operator_norm"].get<double>(), 0.0);
}

TEST(Limit, CsvRows) {
  RunConfig cfg;
  cfg.command = Command::limit;
  cfg.n_list = {32, 64, 128, 256};
  cfg.format = OutputFormat::csv;
  const CommandResult r = run_command(cfg);
  EXPECT_EQ(r.exit_code, kExitPass) << r.message;
  const auto lines = data_lines(r.report);
  ASSERT_EQ(lines.size(), 5U);
  EXPECT_EQ(lines[0], "n,re,im,error");
  EXPECT_EQ(lines[1].substr(0, 3), "32,");
  EXPECT_NE(lines[1].find("e-"), std::string::npos);
}

TEST(Limit, SingleRowAndBadLists) {
  RunConfig cfg;
  cfg.command = Command::limit;
  cfg.n_list = {8};
  const CommandResult one = run_command(cfg);
  EXPECT_EQ(Json::parse(one.report)["monotone_flag"], true);
  EXPECT_EQ(one.exit_code, kExitPass);
  cfg.n_list = {64, 32};
  EXPECT_EQ(run_command(cfg).exit_code, kExitUsage);
  cfg.n_list = {};
  EXPECT_EQ(run_command(cfg).exit_code, kExitUsage);
  cfg.n_list = {4, 8};
  EXPECT_EQ(run_command(cfg).exit_code, kExitUsage);
}

TEST(Explode, SixteenSevenDelocalizes) {
  RunConfig cfg = config(Command::explode, 16);
  cfg.seed = 7;
  const CommandResult r = run_command(cfg);
  EXPECT_EQ(r.exit_code, kExitPass) << r.message;
  const Json doc = Json::parse(r.report);
  EXPECT_EQ(doc["canonical"]["band_energy"].get<double>(), 1.0);
  EXPECT_LT(doc["transformed"]["band_energy"].get<double>(), 0.5);
  EXPECT_LT(doc["spectrum_deviation"].get<double>(), 1e-9);
  EXPECT_EQ(doc["canonical"]["spectrum"].size(), 16U);
}

TEST(Explode, TwoIsReportOnly) {
  RunConfig cfg = config(Command::explode, 2);
  cfg.seed = 1;
  const CommandResult r = run_command(cfg);
  EXPECT_EQ(r.exit_code, kExitPass);
  EXPECT_EQ(Json::parse(r.report)["threshold_applies"], false);
}

TEST(Wave, EnergyDriftAtSixtyFour) {
  RunConfig cfg = config(Command::wave, 64);
  cfg.sample_every = 5000;
  const CommandResult r = run_command(cfg);
  EXPECT_EQ(r.exit_code, kExitPass) << r.message;
  const Json doc = Json::parse(r.report);
  EXPECT_LT(doc["energy_drift"].get<double>(), 1e-6);
  EXPECT_EQ(doc["dispersion"].size(), 32U);
  EXPECT_LT(doc["max_leapfrog_relative_error"].get<double>(), 1e-8);
  EXPECT_EQ(doc["trajectory"].size(), 3U);
}

TEST(Wave, UnstableStepIsUsageError) {
  RunConfig cfg = config(Command::wave, 8);
  cfg.dt = 0.6;
  EXPECT_EQ(run_command(cfg).exit_code, kExitUsage);
}

TEST(Wave, CsvTrajectoryHeader) {
  RunConfig cfg = config(Command::wave, 4);
  cfg.steps = 20;
  cfg.sample_every = 10;
  cfg.format = OutputFormat::csv;
  const auto lines = data_lines(run_command(cfg).report);
  ASSERT_EQ(lines.size(), 1U + 3U * 4U);
  EXPECT_EQ(lines[0], "step,site,re,im");
  EXPECT_EQ(lines[1].substr(0, 4), "0,0,");
}

TEST(Uncertainty, WitnessAtTwo) {
  RunConfig cfg = config(Command::uncertainty, 2);
  cfg.trials = 100;
  cfg.seed = 3;
  const CommandResult r = run_command(cfg);
  EXPECT_EQ(r.exit_code, kExitPass) << r.message;
  const Json doc = Json::parse(r.report);
  EXPECT_GE(doc["best_bound"].get<double>(), 0.2);
  EXPECT_EQ(doc["robertson_violations"], 0);
}

TEST(DualityAudit, ReportsResidualAtFour) {
  const CommandResult r = run_command(config(Command::duality_audit, 4));
  EXPECT_EQ(r.exit_code, kExitPass);
  const Json doc = Json::parse(r.report);
  EXPECT_TRUE(doc.contains("scalar_residual"));
  EXPECT_TRUE(doc["matches_dft_up_to_scalar"].get<bool>());
}

TEST(Determinism, EveryCommandTwice) {
  std::vector<RunConfig> configs;
  configs.push_back(config(Command::verify, 5));
  configs.push_back(config(Command::commutator, 6));
  RunConfig u = config(Command::uncertainty, 4);
  u.trials = 200;
  u.seed = 11;
  configs.push_back(u);
  RunConfig l;
  l.command = Command::limit;
  l.n_list = {8, 16, 32};
  configs.push_back(l);
  RunConfig e = config(Command::explode, 16);
  e.seed = 7;
  configs.push_back(e);
  RunConfig w = config(Command::wave, 16);
  w.steps = 500;
  configs.push_back(w);
  configs.push_back(config(Command::duality_audit, 5));
  for (auto cfg : configs) {
    for (const auto fmt : {OutputFormat::json, OutputFormat::csv}) {
      cfg.format = fmt;
      const CommandResult a = run_command(cfg);
      const CommandResult b = run_command(cfg);
      EXPECT_EQ(a.report, b.report) << to_string(cfg.command);
      EXPECT_FALSE(a.report.empty());
    }
  }
}

TEST(Output, EnvironmentDirectoryAndExplicitPath) {
  const auto dir = std::filesystem::temp_directory_path() / "weyl_output_test";
  std::filesystem::create_directories(dir);
  RunConfig cfg = config(Command::commutator, 3);
  ::setenv("WEYL_OUTPUT_DIR", dir.c_str(), 1);
  EXPECT_EQ(resolve_output_path(cfg, "json"), (dir / "commutator.json").string());
  const CommandResult r = run_command(cfg);
  write_report(cfg, r);
  EXPECT_EQ(slurp(dir / "commutator.json"), r.report);
  cfg.output_path = (dir / "explicit.json").string();
  EXPECT_EQ(resolve_output_path(cfg, "json"), cfg.output_path);
  ::unsetenv("WEYL_OUTPUT_DIR");
  cfg.output_path.clear();
  EXPECT_EQ(resolve_output_path(cfg, "json"), "");
  std::filesystem::remove_all(dir);
}

TEST(Cli, ExitCodes) {
  const auto dir = std::filesystem::temp_directory_path() / "weyl_cli_test";
  std::filesystem::create_directories(dir);
  const std::string out = (dir / "out.txt").string();
  EXPECT_EQ(run_cli("verify --n 4", out), 0);
  EXPECT_EQ(run_cli("verify --n 1", out), 2);
  EXPECT_EQ(run_cli("limit --n-list 64,32", out), 2);
  EXPECT_EQ(run_cli("bogus", out), 2);
  EXPECT_EQ(run_cli("verify --n notanumber", out), 2);
  EXPECT_EQ(run_cli("explode --n 2 --seed 1", out), 0);
  std::filesystem::remove_all(dir);
}

TEST(Cli, ByteIdenticalFiles) {
  const auto dir = std::filesystem::temp_directory_path() / "weyl_cli_det";
  std::filesystem::create_directories(dir);
  const auto a = dir / "a.json";
  const auto b = dir / "b.json";
  EXPECT_EQ(run_cli("explode --n 16 --seed 7 --output " + a.string(), "/dev/null"), 0);
  EXPECT_EQ(run_cli("explode --n 16 --seed 7 --output " + b.string(), "/dev/null"), 0);
  EXPECT_FALSE(slurp(a).empty());
  EXPECT_EQ(slurp(a), slurp(b));
  std::filesystem::remove_all(dir);
}
