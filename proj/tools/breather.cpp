#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "breather/cli/commands.hpp"
#include "breather/cli/config.hpp"
#include "breather/errors.hpp"

namespace {

using breather::cli::RunConfig;

struct Flags {
  std::string config_path;
  int f = 0;
  int n = 0;
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  double eps = 0.0;
  std::string model;
  std::string pattern;
  std::string k;
  double threshold = 0.0;
  std::string out;
  std::string format;
  int threads = 0;
  bool scaling = false;
};

// Config file first, then only the flags given on the command line.
RunConfig build_config(const CLI::App& app, const Flags& flags, breather::cli::Command command) {
  RunConfig config;
  if (!flags.config_path.empty()) {
    breather::cli::apply_json(config, breather::cli::read_config_file(flags.config_path));
  }
  config.command = command;
  auto given = [&](const char* name) { return app.count(name) > 0; };
  if (given("--f")) config.params.f = flags.f;
  if (given("--n")) config.params.n = flags.n;
  if (given("--gamma1")) config.params.gamma1 = flags.gamma1;
  if (given("--gamma2")) config.params.gamma2 = flags.gamma2;
  if (given("--eps")) config.params.epsilon = flags.eps;
  if (given("--model")) config.params.model = breather::model_from_string(flags.model);
  if (given("--pattern")) config.pattern = breather::parse_pattern(flags.pattern);
  if (given("--k")) {
    if (flags.k == "all") {
      config.k.reset();
    } else {
      try {
        std::size_t used = 0;
        config.k = std::stoi(flags.k, &used);
        if (used != flags.k.size()) throw std::invalid_argument(flags.k);
      } catch (const std::logic_error&) {
        throw breather::ValidationError("--k expects 'all' or an integer, got '" + flags.k + "'");
      }
    }
  }
  if (given("--threshold")) config.threshold = flags.threshold;
  if (given("--out")) config.out = flags.out;
  if (given("--format")) config.format = breather::cli::format_from_string(flags.format);
  if (given("--threads")) config.threads = flags.threads;
  if (given("--scaling")) config.scaling = flags.scaling;
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectra and breather bands of the periodic Bose-Hubbard ring"};
  app.require_subcommand(1);
  Flags flags;
  app.add_option("--config", flags.config_path, "flat JSON config; flags override its values");
  app.add_option("--f", flags.f, "number of sites");
  app.add_option("--n", flags.n, "number of bosons");
  app.add_option("--gamma1", flags.gamma1, "quadratic on-site coefficient");
  app.add_option("--gamma2", flags.gamma2, "cubic on-site coefficient (model h2)");
  app.add_option("--eps", flags.eps, "hopping amplitude");
  app.add_option("--model", flags.model, "h1 or h2");
  app.add_option("--pattern", flags.pattern, "band pattern, e.g. \"2,2\"");
  app.add_option("--k", flags.k, "'all' or a centered momentum index l");
  app.add_option("--threshold", flags.threshold, "classification weight threshold");
  app.add_option("--out", flags.out, "output path (default: stdout)");
  app.add_option("--format", flags.format, "csv or json");
  app.add_option("--threads", flags.threads, "OpenMP threads (0: runtime default)");
  app.add_flag("--scaling", flags.scaling, "compare: also run eps/2 and eps/4");

  const std::pair<const char*, const char*> commands[] = {
      {"spectrum", "momentum-resolved spectrum with band labels"},
      {"band", "one band with line/continuum tags and PT residuals"},
      {"pt", "second-order PT eigenvalues and asymptotic bands"},
      {"compare", "exact versus PT residuals per k"},
      {"oracle", "dense spectrum of the full sector"},
  };
  for (const auto& [name, help] : commands) app.add_subcommand(name, help)->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return breather::cli::kExitValidation;
  }

  RunConfig config;
  try {
    const auto chosen = app.get_subcommands().front()->get_name();
    config = build_config(app, flags, breather::cli::command_from_string(chosen));
  } catch (...) {
    return breather::cli::exit_code_for_current_exception(std::cerr);
  }
  return breather::cli::execute(config, std::cout, std::cerr);
}
