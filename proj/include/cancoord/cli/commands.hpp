#pragma once

// Subcommands of the cancoord tool. Each cmd_* returns a RunReport and throws
// CliError carrying the process exit code on failure.

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "cancoord/bargain.hpp"
#include "cancoord/cli/format.hpp"
#include "cancoord/game.hpp"
#include "cancoord/model.hpp"

namespace cancoord::cli {

inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode : int {
  kExitOk = 0,
  kExitIo = 1,
  kExitUsage = 2,
  kExitInternal = 3,
};

class CliError : public std::runtime_error {
 public:
  CliError(int exit_code, const std::string& message)
      : std::runtime_error(message), exit_code_(exit_code) {}
  int exit_code() const noexcept { return exit_code_; }

 private:
  int exit_code_;
};

enum class OutputFormat { Json, Csv };

struct RunReport {
  std::string command;
  std::optional<std::string> scenario_path;
  nlohmann::json results = nlohmann::json::object();
  std::vector<std::string> artifacts;
  std::string tool_version = kToolVersion;

  nlohmann::json to_json() const;
};

using Overrides = std::map<std::string, double>;

/// Parses "name=value" items. Throws CliError(kExitUsage).
Overrides parse_assignments(const std::vector<std::string>& items, const std::string& flag);

RunReport cmd_detect(const std::filesystem::path& scenario_path, OutputFormat format,
                     std::ostream& out);

RunReport cmd_game(const PayoffMatrix& payoffs);
RunReport cmd_game(const std::filesystem::path& scenario_path, std::size_t conflict_index,
                   const Overrides& base_overrides);

enum class BargainMethod { Sequential, Ascent, Brute };

struct BargainOptions {
  std::filesystem::path scenario_path;
  BargainMethod method = BargainMethod::Sequential;
  std::vector<std::string> order;  // empty: declaration order
  Overrides disagreement;
  Overrides start;  // ascent starting point overrides on top of defaults
  std::size_t max_iters = 100;
  double tol = 1e-12;
  std::optional<std::filesystem::path> out;
};

RunReport cmd_bargain(const BargainOptions& options);

struct SweepOptions {
  std::filesystem::path scenario_path;
  std::string param;
  Overrides base;
  Overrides disagreement;
  std::optional<std::filesystem::path> out_csv;
  std::optional<std::filesystem::path> svg;
};

/// Writes the CSV to out_csv, or to `out` when no path is given.
RunReport cmd_sweep(const SweepOptions& options, std::ostream& out);

/// Runs the full pipeline on the built-in two-function scenario and writes
/// every artifact into out_dir. Throws CliError(kExitInternal) after writing
/// if the reproduced optimum is not (p1 = 6, p2 = 300) or methods disagree.
RunReport cmd_reproduce(const std::filesystem::path& out_dir);

/// Sweep table with header `param,<objectives...>,product`.
CsvTable sweep_table(const Scenario& scenario, const std::string& param,
                     const Configuration& base, const DisagreementPoint& d);

nlohmann::json outcome_json(const Scenario& scenario, const BargainOutcome& outcome,
                            std::string_view method);

/// Full command-line entry point; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cancoord::cli
