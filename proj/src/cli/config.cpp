#include "breather/cli/config.hpp"

#include <fstream>

#include "breather/errors.hpp"

namespace breather::cli {

using nlohmann::json;

std::string to_string(Command command) {
  switch (command) {
    case Command::spectrum: return "spectrum";
    case Command::band: return "band";
    case Command::pt: return "pt";
    case Command::compare: return "compare";
    case Command::oracle: break;
  }
  return "oracle";
}

Command command_from_string(const std::string& name) {
  for (Command c : {Command::spectrum, Command::band, Command::pt, Command::compare,
                    Command::oracle}) {
    if (to_string(c) == name) return c;
  }
  throw ValidationError("unknown command '" + name + "'");
}

std::string to_string(Format format) { return format == Format::csv ? "csv" : "json"; }

Format format_from_string(const std::string& name) {
  if (name == "csv") return Format::csv;
  if (name == "json") return Format::json;
  throw ValidationError("unknown format '" + name + "' (expected csv or json)");
}

void RunConfig::validate() const {
  params.validate();
  if (!(threshold > 0.0 && threshold <= 1.0)) {
    throw ValidationError("threshold must lie in (0, 1]");
  }
  if (threads < 0) throw ValidationError("threads must be >= 0");
  if (pattern && pattern->bosons() != params.n) {
    throw ValidationError("pattern " + pattern->label() + " sums to " +
                          std::to_string(pattern->bosons()) + ", not n=" +
                          std::to_string(params.n));
  }
  const bool needs_pattern =
      command == Command::band || command == Command::pt || command == Command::compare;
  if (needs_pattern && !pattern) {
    throw ValidationError("command '" + to_string(command) + "' needs --pattern");
  }
  if (k) {
    const int lo = -((params.f - 1) / 2);
    const int hi = params.f / 2;
    if (*k < lo || *k > hi) {
      throw ValidationError("k index " + std::to_string(*k) + " outside [" + std::to_string(lo) +
                            ", " + std::to_string(hi) + "]");
    }
  }
  if (scaling && command != Command::compare) {
    throw ValidationError("--scaling applies to the compare command only");
  }
}

json to_json(const RunConfig& config) {
  json j;
  j["command"] = to_string(config.command);
  j["f"] = config.params.f;
  j["n"] = config.params.n;
  j["gamma1"] = config.params.gamma1;
  j["gamma2"] = config.params.gamma2;
  j["epsilon"] = config.params.epsilon;
  j["model"] = to_string(config.params.model);
  if (config.pattern) {
    std::string text;
    for (std::size_t i = 0; i < config.pattern->counts.size(); ++i) {
      if (i) text += ',';
      text += std::to_string(config.pattern->counts[i]);
    }
    j["pattern"] = text;
  }
  if (config.k) {
    j["k"] = *config.k;
  } else {
    j["k"] = "all";
  }
  j["threshold"] = config.threshold;
  j["format"] = to_string(config.format);
  j["out"] = config.out;
  j["threads"] = config.threads;
  j["scaling"] = config.scaling;
  return j;
}

void apply_json(RunConfig& config, const json& object) {
  if (!object.is_object()) throw ValidationError("config must be a JSON object");
  try {
    for (const auto& [key, value] : object.items()) {
      if (key == "command") config.command = command_from_string(value.get<std::string>());
      else if (key == "f") config.params.f = value.get<int>();
      else if (key == "n") config.params.n = value.get<int>();
      else if (key == "gamma1") config.params.gamma1 = value.get<double>();
      else if (key == "gamma2") config.params.gamma2 = value.get<double>();
      else if (key == "epsilon") config.params.epsilon = value.get<double>();
      else if (key == "model") config.params.model = model_from_string(value.get<std::string>());
      else if (key == "pattern") config.pattern = parse_pattern(value.get<std::string>());
      else if (key == "k") {
        if (value.is_string() && value.get<std::string>() == "all") config.k.reset();
        else config.k = value.get<int>();
      }
      else if (key == "threshold") config.threshold = value.get<double>();
      else if (key == "format") config.format = format_from_string(value.get<std::string>());
      else if (key == "out") config.out = value.get<std::string>();
      else if (key == "threads") config.threads = value.get<int>();
      else if (key == "scaling") config.scaling = value.get<bool>();
      else throw ValidationError("unknown config key '" + key + "'");
    }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("config value has the wrong type: ") + e.what());
  }
}

RunConfig config_from_json(const json& object) {
  RunConfig config;
  apply_json(config, object);
  return config;
}

json read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError("config file '" + path + "' is not valid JSON: " + e.what());
  }
}

}  // namespace breather::cli
