#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>

#include "breather/hamiltonian.hpp"
#include "breather/pattern.hpp"

namespace breather::cli {

enum class Command { spectrum, band, pt, compare, oracle };
enum class Format { csv, json };

std::string to_string(Command command);
Command command_from_string(const std::string& name);
std::string to_string(Format format);
Format format_from_string(const std::string& name);

/// Everything one invocation needs. Validated before any computation.
struct RunConfig {
  Command command = Command::spectrum;
  ModelParams params;
  std::optional<Pattern> pattern;
  std::optional<int> k;  // centered momentum index l; empty means all
  double threshold = 0.5;
  Format format = Format::csv;
  std::string out;  // empty: standard output
  int threads = 0;
  bool scaling = false;

  void validate() const;
  bool operator==(const RunConfig&) const = default;
};

/// Exit codes of the command-line driver.
enum ExitCode : int {
  kExitOk = 0,
  kExitIo = 1,
  kExitValidation = 2,
  kExitCapacity = 3,
  kExitResonance = 4,
  kExitNumerical = 5,
};

nlohmann::json to_json(const RunConfig& config);

/// Applies the keys present in a flat JSON object on top of an existing config.
/// Recognized keys: command, f, n, gamma1, gamma2, epsilon, model, pattern, k,
/// threshold, format, out, threads, scaling.
void apply_json(RunConfig& config, const nlohmann::json& object);

RunConfig config_from_json(const nlohmann::json& object);

/// Reads a flat JSON config file; throws ValidationError on unreadable or malformed input.
nlohmann::json read_config_file(const std::string& path);

}  // namespace breather::cli
