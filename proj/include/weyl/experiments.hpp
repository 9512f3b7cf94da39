#pragma once

// Command runners behind the weyl_cli tool. Each runner builds a complete
// report in memory; nothing here touches the filesystem except write_report.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "weyl/io.hpp"

namespace weyl {

enum class Command { verify, commutator, uncertainty, limit, explode, wave, duality_audit };
enum class OutputFormat { json, csv };

std::string_view to_string(Command c);
std::optional<Command> command_from_string(std::string_view s);

struct RunConfig {
  Command command = Command::verify;
  int n = 4;
  std::vector<int> n_list;
  std::uint64_t seed = 0;
  int trials = 1000;
  OutputFormat format = OutputFormat::json;
  std::string output_path;
  double alpha = 1.0;
  double dt = 0.05;
  int steps = 10000;
  int sample_every = 100;
  double width_factor = 1.0;
};

/// Invalid configuration; maps to exit code 2.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

inline constexpr std::string_view kToolVersion = WEYL_VERSION;

/// Largest n accepted by verify.
inline constexpr int kVerifyMaxN = 64;
/// Index-space size up to which verify runs a suite exhaustively; larger spaces are sampled.
inline constexpr long long kExhaustiveBudget = 65536;
/// Relative energy drift accepted by the wave command.
inline constexpr double kEnergyDriftBound = 1e-6;
/// delocalization_index a random conjugate of N+ must exceed.
inline constexpr double kDelocalizationThreshold = 0.3;

struct CommandResult {
  int exit_code = kExitPass;
  std::string report;     // empty on usage error
  std::string message;    // failing identity or error text
  std::string extension;  // "json" or "csv"
};

/// One row of the verify report.
struct IdentityCheck {
  std::string name;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  long long checked = 0;
  bool exhaustive = true;
  bool pass() const { return max_deviation <= tolerance; }
};

/// All identity suites at one n, in report order.
std::vector<IdentityCheck> run_identity_suites(const AlgebraParams& params, std::uint64_t seed);

/// Throws UsageError for invalid settings.
void validate(const RunConfig& cfg);

/// Runs one command. Usage errors become exit 2, failures inside an operation exit 1.
CommandResult run_command(const RunConfig& cfg);

/// Destination for a report: cfg.output_path, else $WEYL_OUTPUT_DIR/<command>.<ext>,
/// else empty (stdout).
std::string resolve_output_path(const RunConfig& cfg, const std::string& extension);

/// Writes the report to its destination; throws std::runtime_error on I/O failure.
void write_report(const RunConfig& cfg, const CommandResult& result);

}  // namespace weyl
