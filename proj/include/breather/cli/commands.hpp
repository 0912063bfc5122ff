#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "breather/cli/config.hpp"

namespace breather::cli {

using Cell = std::variant<std::monostate, long long, double, std::string, bool>;

/// One command's output: a single table plus metadata.
struct Report {
  RunConfig config;
  nlohmann::json metadata = nlohmann::json::object();
  std::vector<std::string> warnings;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

Report cmd_spectrum(const RunConfig& config);
Report cmd_band(const RunConfig& config);
Report cmd_pt(const RunConfig& config);
Report cmd_compare(const RunConfig& config);
Report cmd_oracle(const RunConfig& config);

/// Validates the config and dispatches on config.command.
Report run(const RunConfig& config);

/// CSV: '#' comment lines (command, config JSON, metadata, warnings), a header
/// row, then one line per row with 17 significant digits.
std::string render_csv(const Report& report);
/// JSON: {"command", "config", "metadata", "warnings", "columns", "rows": [{...}]}.
std::string render_json(const Report& report);
std::string render(const Report& report);

/// Runs the command and writes its output (to config.out or `out`). Errors go to
/// `err` and are mapped onto ExitCode; nothing is written on failure.
int execute(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Maps the exception currently being handled onto an exit code.
int exit_code_for_current_exception(std::ostream& err);

}  // namespace breather::cli
