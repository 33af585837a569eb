#pragma once

#include <json.hpp>

#include <set>
#include <string>
#include <variant>
#include <vector>

#include "hydroconf/config.hpp"

namespace hydroconf::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitBadConfig = 2;

inline constexpr int kJsonSchemaVersion = 1;

using Cell = std::variant<double, int, std::string>;

/// Result of one subcommand: a CSV-shaped table plus structured extras
/// (detected peaks, minima, crossings) and diagnostics for stderr.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  nlohmann::json extra = nlohmann::json::object();
  std::vector<std::string> notes;
  bool failed = false;
};

const std::vector<std::string>& commands();

/// Fills command-specific defaults for keys the user did not set.
RunConfig resolve(RunConfig config, const std::set<std::string>& seen);

/// Runs config.command on an already resolved config.
Table run_command(const RunConfig& config);

/// Header block, column row and data rows with 10 significant digits.
std::string render_csv(const RunConfig& config, const Table& table);
nlohmann::json render_json(const RunConfig& config, const Table& table);

/// Entry point of the executable; returns the process exit code.
int run(int argc, char** argv);

}  // namespace hydroconf::cli
