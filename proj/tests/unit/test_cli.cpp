#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <sstream>

#include "breather/cli/commands.hpp"
#include "breather/cli/config.hpp"
#include "breather/errors.hpp"

using namespace breather;
using namespace breather::cli;
using nlohmann::json;

namespace {

RunConfig config(Command command, int f, int n, double g1, double g2, double eps) {
  RunConfig c;
  c.command = command;
  c.params.f = f;
  c.params.n = n;
  c.params.gamma1 = g1;
  c.params.gamma2 = g2;
  c.params.epsilon = eps;
  return c;
}

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(const RunConfig& c) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = execute(c, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> data_lines(const std::string& csv) {
  std::vector<std::string> lines;
  std::istringstream in(csv);
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line[0] != '#') lines.push_back(line);
  }
  return lines;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("config json round trip") {
  auto c = config(Command::compare, 19, 4, 10, 0.25, 0.5);
  c.pattern = Pattern{2, 2};
  c.k = -3;
  c.threshold = 0.6;
  c.format = Format::json;
  c.threads = 2;
  c.scaling = true;
  c.out = "x.json";
  CHECK(config_from_json(json::parse(to_json(c).dump())) == c);
  c.k.reset();
  CHECK(config_from_json(to_json(c)) == c);
}

TEST_CASE("config file rejects unknown keys and bad types") {
  CHECK_THROWS_AS(config_from_json(json{{"f", 5}, {"colour", 1}}), ValidationError);
  CHECK_THROWS_AS(config_from_json(json{{"f", "five"}}), ValidationError);
  CHECK_THROWS_AS(config_from_json(json::array()), ValidationError);
  CHECK_THROWS_AS(read_config_file("/nonexistent/config.json"), ValidationError);
}

TEST_CASE("json output reproduces its config and result") {
  auto c = config(Command::spectrum, 5, 3, 2.0, 0.5, 0.3);
  c.format = Format::json;
  const auto first = run_cli(c);
  REQUIRE(first.code == kExitOk);
  const auto doc = json::parse(first.out);
  const auto again = config_from_json(doc["config"]);
  CHECK(again == c);
  CHECK(run_cli(again).out == first.out);
}

TEST_CASE("spectrum csv schema") {
  const auto r = run_cli(config(Command::spectrum, 5, 3, 2.0, 0.5, 0.3));
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.rfind("# breather spectrum\n# config: {", 0) == 0);
  const auto lines = data_lines(r.out);
  REQUIRE(lines.size() == 36);
  CHECK(lines[0] == "l,k,index,energy,band,weight");
  const auto last = lines.back();
  CHECK(last.rfind("2,", 0) == 0);
}

TEST_CASE("spectrum at zero hopping repeats the diagonal energies") {
  auto c = config(Command::spectrum, 5, 2, 3.0, 0.0, 0.0);
  c.format = Format::json;
  const auto doc = json::parse(run_cli(c).out);
  std::map<int, std::vector<double>> by_l;
  for (const auto& row : doc["rows"]) by_l[row["l"].get<int>()].push_back(row["energy"]);
  REQUIRE(by_l.size() == 5);
  for (const auto& [l, energies] : by_l) {
    REQUIRE(energies.size() == 3);
    CHECK(energies[0] == doctest::Approx(-6.0));
    CHECK(energies[1] == doctest::Approx(0.0));
    CHECK(energies[2] == doctest::Approx(0.0));
  }
}

TEST_CASE("k selection") {
  auto c = config(Command::spectrum, 5, 3, 2.0, 0.5, 0.3);
  c.k = -2;
  const auto lines = data_lines(run_cli(c).out);
  REQUIRE(lines.size() == 8);
  for (std::size_t i = 1; i < lines.size(); ++i) CHECK(lines[i].rfind("-2,", 0) == 0);
  c.k = 3;
  CHECK(run_cli(c).code == kExitValidation);
}

TEST_CASE("oracle") {
  const auto r = run_cli(config(Command::oracle, 5, 3, 2.0, 0.5, 0.3));
  REQUIRE(r.code == kExitOk);
  CHECK(data_lines(r.out).size() == 36);
  const auto big = run_cli(config(Command::oracle, 19, 4, 10, 0, 0.5));
  CHECK(big.code == kExitCapacity);
  CHECK(big.out.empty());
}

TEST_CASE("validation failures leave no output file") {
  const auto path = std::filesystem::temp_directory_path() / "breather_cli_invalid.csv";
  std::filesystem::remove(path);
  auto c = config(Command::spectrum, 1, 2, 1.0, 0.0, 0.1);
  c.out = path.string();
  CHECK(run_cli(c).code == kExitValidation);
  CHECK_FALSE(std::filesystem::exists(path));

  auto band = config(Command::band, 7, 4, 10, 0, 0.5);
  band.pattern = Pattern{5, 1};
  CHECK(run_cli(band).code == kExitValidation);
  band.pattern.reset();
  CHECK(run_cli(band).code == kExitValidation);

  auto scaled = config(Command::spectrum, 5, 3, 1, 0, 0.1);
  scaled.scaling = true;
  CHECK(run_cli(scaled).code == kExitValidation);
}

TEST_CASE("output file is written on success") {
  const auto path = std::filesystem::temp_directory_path() / "breather_cli_ok.csv";
  auto c = config(Command::oracle, 4, 2, 1.0, 0.0, 0.2);
  c.out = path.string();
  const auto r = run_cli(c);
  CHECK(r.code == kExitOk);
  CHECK(r.out.empty());
  CHECK(std::filesystem::exists(path));
  std::filesystem::remove(path);

  c.out = "/nonexistent-dir/out.csv";
  CHECK(run_cli(c).code == kExitIo);
}

TEST_CASE("pt command") {
  auto c = config(Command::pt, 19, 4, 10, 0, 0.5);
  c.pattern = Pattern{2, 2};
  c.k = 0;
  c.format = Format::json;
  const auto r = run_cli(c);
  REQUIRE(r.code == kExitOk);
  const auto doc = json::parse(r.out);
  REQUIRE(doc["rows"].size() == 9);
  for (const auto& row : doc["rows"]) CHECK(row["asym_line"].get<double>() == doctest::Approx(-39.8875));
  CHECK(doc["metadata"]["matrices"].size() == 1);

  auto resonant = config(Command::pt, 11, 6, 9, 3, 0.5);
  resonant.pattern = Pattern{4, 2};
  const auto res = run_cli(resonant);
  CHECK(res.code == kExitResonance);
  CHECK(res.err.find("gamma1 - 3 gamma2") != std::string::npos);

  auto flat = config(Command::pt, 11, 6, 10, 20, 0.5);
  flat.pattern = Pattern{3, 3};
  flat.format = Format::json;
  std::map<long long, std::vector<double>> by_index;
  for (const auto& row : json::parse(run_cli(flat).out)["rows"]) {
    by_index[row["index"].get<long long>()].push_back(row["pt_energy"]);
  }
  for (const auto& [i, values] : by_index) {
    CHECK(*std::max_element(values.begin(), values.end()) ==
          *std::min_element(values.begin(), values.end()));
  }
}

TEST_CASE("compare needs an odd ring") {
  auto c = config(Command::compare, 10, 4, 10, 0, 0.5);
  c.pattern = Pattern{2, 2};
  const auto r = run_cli(c);
  CHECK(r.code == kExitValidation);
  CHECK(r.err.find("odd") != std::string::npos);
}

TEST_CASE("band command flags the ground state") {
  auto c = config(Command::band, 9, 4, 10, 7.5, 0.5);
  c.pattern = Pattern{2, 2};
  c.format = Format::json;
  const auto r = run_cli(c);
  REQUIRE(r.code == kExitOk);
  const auto doc = json::parse(r.out);
  int flagged = 0;
  for (const auto& row : doc["rows"]) {
    if (row["global_ground_state"].get<bool>()) {
      ++flagged;
      CHECK(row["tag"] == "line");
      CHECK(row["l"] == 0);
    }
  }
  CHECK(flagged == 1);
}

TEST_CASE("csv numbers keep 17 significant digits") {
  const auto r = run_cli(config(Command::oracle, 3, 2, 1.0, 0.0, 0.3));
  const auto lines = data_lines(r.out);
  REQUIRE(lines.size() > 1);
  const auto value = lines[1].substr(lines[1].find(',') + 1);
  CHECK(std::stod(value) != 0.0);
  CHECK(value.size() >= 16);
}

TEST_CASE("exit code mapping") {
  auto code_of = [](auto thrower) {
    std::ostringstream err;
    try {
      thrower();
    } catch (...) {
      return exit_code_for_current_exception(err);
    }
    return -1;
  };
  CHECK(code_of([] { throw ValidationError("v"); }) == 2);
  CHECK(code_of([] { throw CapacityError("c"); }) == 3);
  CHECK(code_of([] { throw ResonanceError("g", 0.0); }) == 4);
  CHECK(code_of([] { throw NumericalError("n"); }) == 5);
  CHECK(code_of([] { throw BandOverlapError("b"); }) == 5);
  CHECK(code_of([] { throw std::runtime_error("io"); }) == 1);
}

}
