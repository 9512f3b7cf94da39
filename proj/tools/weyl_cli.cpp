#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "weyl/experiments.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Finite Weyl algebra experiments"};
  app.set_version_flag("--version", std::string(weyl::kToolVersion));

  weyl::RunConfig cfg;
  std::string command;
  std::string format = "json";

  std::vector<std::string> names;
  for (const auto c : {weyl::Command::verify, weyl::Command::commutator, weyl::Command::uncertainty,
                       weyl::Command::limit, weyl::Command::explode, weyl::Command::wave,
                       weyl::Command::duality_audit}) {
    names.emplace_back(weyl::to_string(c));
  }

  app.add_option("command", command, "Command to run")->required()->check(CLI::IsMember(names));
  app.add_option("--n", cfg.n, "Algebra order");
  app.add_option("--n-list", cfg.n_list, "Comma-separated ascending orders (limit)")->delimiter(',');
  app.add_option("--seed", cfg.seed, "RNG seed");
  app.add_option("--trials", cfg.trials, "Random states (uncertainty)");
  app.add_option("--output-format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--output", cfg.output_path, "Report file (default: $WEYL_OUTPUT_DIR/<command>.<ext> or stdout)");
  app.add_option("--alpha", cfg.alpha, "Wave stiffness");
  app.add_option("--dt", cfg.dt, "Wave time step");
  app.add_option("--steps", cfg.steps, "Wave steps");
  app.add_option("--sample-every", cfg.sample_every, "Trajectory sampling stride (wave)");
  app.add_option("--width-factor", cfg.width_factor, "Gaussian width multiplier (limit)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return weyl::kExitUsage;
  }

  cfg.command = *weyl::command_from_string(command);
  cfg.format = format == "csv" ? weyl::OutputFormat::csv : weyl::OutputFormat::json;

  const weyl::CommandResult result = weyl::run_command(cfg);
  if (result.exit_code == weyl::kExitUsage) {
    std::cerr << "usage error: " << result.message << "\n" << app.help();
    return result.exit_code;
  }
  try {
    weyl::write_report(cfg, result);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return weyl::kExitFail;
  }
  if (!result.message.empty()) std::cerr << result.message << "\n";
  return result.exit_code;
}
