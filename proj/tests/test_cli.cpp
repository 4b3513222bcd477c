#include <doctest.h>

#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "support/cli_cases.hpp"

using namespace testing_support;
using nlohmann::json;

namespace {

const std::string kFixtures = APSPECTRA_FIXTURE_DIR;
const std::string kGolden = APSPECTRA_GOLDEN_DIR;

std::filesystem::path scratch_dir() {
  const auto dir = std::filesystem::temp_directory_path() / "apspectra_cli_test";
  std::filesystem::create_directories(dir);
  return dir;
}

bool mentions(const CliRun& r, const std::string& text) { return r.err.find(text) != std::string::npos; }

}  // namespace

TEST_CASE("golden reports") {
  for (const auto& c : cli_cases(kFixtures)) {
    CAPTURE(c.name);
    CAPTURE(c.extension);
    const CliRun first = run_cli(c.args);
    REQUIRE(first.code == 0);
    const std::string golden = read_file(golden_path(kGolden, c));
    REQUIRE_FALSE(golden.empty());
    CHECK(first.out == golden);
    CHECK(run_cli(c.args).out == first.out);
  }
}

TEST_CASE("documented examples") {
  const CliRun coeff = run_cli({"coeff", "--signal", kFixtures + "/two_tone.json", "--lambda", "1.4142135623730951",
                                "--tol", "1e-4"});
  REQUIRE(coeff.code == 0);
  const json c = json::parse(coeff.out);
  CHECK(c["command"] == "coeff");
  CHECK(std::abs(c["result"]["magnitude"].get<double>() - 2.0) < 1e-3);

  const CliRun zeta = run_cli({"zeta", "--x", "0.5", "--N", "3", "--J", "0", "--mode", "bound"});
  REQUIRE(zeta.code == 0);
  CHECK(json::parse(zeta.out)["result"]["lower_bound"].get<double>() == doctest::Approx(0.634284100597564));

  const CliRun scan = run_cli({"scan", "--signal", kFixtures + "/zero.json", "--range", "0", "3", "--step", "0.01",
                               "--threshold", "0.5"});
  REQUIRE(scan.code == 0);
  CHECK(json::parse(scan.out)["result"]["exponents"].empty());
}

TEST_CASE("report schema") {
  const CliRun r = run_cli({"mean", "--signal", kFixtures + "/two_tone.json"});
  REQUIRE(r.code == 0);
  const auto doc = nlohmann::ordered_json::parse(r.out);
  std::vector<std::string> keys;
  for (const auto& [k, v] : doc.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"command", "params", "result", "trace", "warnings"});
}

TEST_CASE("validation errors exit with status 2 and name the flag") {
  const std::string two_tone = kFixtures + "/two_tone.json";
  struct Bad {
    std::vector<std::string> args;
    std::string flag;
  };
  const std::vector<Bad> cases{
      {{"scan", "--signal", two_tone, "--range", "0", "3", "--step", "-1", "--threshold", "0.5"}, "--step"},
      {{"scan", "--signal", two_tone, "--range", "3", "0", "--threshold", "0.5"}, "--range"},
      {{"scan", "--signal", two_tone, "--range", "0", "3"}, "--threshold"},
      {{"mean"}, "--signal"},
      {{"mean", "--signal", kFixtures + "/missing_field.json"}, "--signal"},
      {{"mean", "--signal", kFixtures + "/does_not_exist.json"}, "--signal"},
      {{"mean", "--signal", two_tone, "--growth", "1"}, "--growth"},
      {{"mean", "--signal", two_tone, "--tol", "0"}, "--tol"},
      {{"coeff", "--signal", two_tone}, "--lambda"},
      {{"periods", "--signal", two_tone, "--range", "0", "10"}, "--epsilon"},
      {{"periods", "--signal", two_tone, "--range", "0", "10", "--epsilon", "0.2", "--probe-step", "1"},
       "--probe-step"},
      {{"bound-check", "--signal", two_tone, "--lambda", "0"}, "--lambda"},
      {{"taibleson", "--signal", two_tone}, "--signal"},
      {{"zeta", "--x", "0.5", "--N", "10001"}, "--N"},
      {{"zeta", "--N", "3"}, "--x"},
      {{"mean", "--zeta-x", "0.5"}, "--zeta-N"},
      {{"mean", "--signal", two_tone, "--zeta-x", "0.5", "--zeta-N", "2"}, "--signal"},
      {{"mean", "--signal", two_tone, "--format", "xml"}, "--format"},
      {{"mean", "--signal", two_tone, "--step", "1"}, "--step"},
      {{"mean", "--signal", two_tone, "--tol", "abc"}, "--tol"},
  };
  for (const auto& b : cases) {
    CAPTURE(b.args);
    const CliRun r = run_cli(b.args);
    CHECK(r.code == 2);
    CHECK(mentions(r, b.flag));
    CHECK(r.out.empty());
  }
  CHECK(run_cli({"nonsense"}).code == 2);
  CHECK(run_cli({}).code == 2);
}

TEST_CASE("malformed signal reports the field") {
  const CliRun r = run_cli({"mean", "--signal", kFixtures + "/missing_field.json"});
  CHECK(mentions(r, "signal.terms[0].im"));
}

TEST_CASE("non-convergence exits with status 3 and keeps the trace") {
  const CliRun r =
      run_cli({"mean", "--signal", kFixtures + "/two_tone.json", "--tol", "1e-15", "--max-doublings", "2"});
  CHECK(r.code == 3);
  const json doc = json::parse(r.out);
  CHECK(doc["result"]["converged"] == false);
  CHECK(doc["trace"].size() == 3);
  CHECK(doc["warnings"].size() == 1);

  const CliRun v = run_cli({"variation", "--signal", kFixtures + "/two_tone.json", "--tol", "1e-15",
                            "--max-doublings", "1"});
  CHECK(v.code == 3);
  CHECK(json::parse(v.out)["trace"].size() == 2);

  const CliRun b = run_cli({"bound-check", "--signal", kFixtures + "/two_tone.json", "--tol", "1e-15",
                            "--max-doublings", "1"});
  CHECK(b.code == 3);
  CHECK(json::parse(b.out)["trace"].size() == 2);
}

TEST_CASE("config file sits between flags and defaults") {
  const auto dir = scratch_dir();
  const auto config = (dir / "config.json").string();
  std::ofstream(config) << R"({"tol": 1e-3, "t_initial": 32, "signal": ")" << kFixtures << R"(/two_tone.json"})";
  const CliRun r = run_cli({"mean", "--config", config, "--tol", "1e-4"});
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["params"]["tol"].get<double>() == 1e-4);
  CHECK(doc["params"]["t_initial"].get<double>() == 32.0);
  CHECK(doc["params"]["growth"].get<double>() == 2.0);
  CHECK(doc["trace"][0]["T"].get<double>() == 32.0);

  const auto unknown = (dir / "unknown.json").string();
  std::ofstream(unknown) << R"({"tolerance": 1e-3})";
  const CliRun bad = run_cli({"mean", "--config", unknown, "--signal", kFixtures + "/two_tone.json"});
  CHECK(bad.code == 2);
  CHECK(mentions(bad, "--config"));

  const auto mistyped = (dir / "mistyped.json").string();
  std::ofstream(mistyped) << R"({"tol": "small"})";
  const CliRun typed = run_cli({"mean", "--config", mistyped, "--signal", kFixtures + "/two_tone.json"});
  CHECK(typed.code == 2);
  CHECK(mentions(typed, "tol"));
}

TEST_CASE("csv output with --out also writes the json report") {
  const auto dir = scratch_dir();
  const auto out = (dir / "scan.csv").string();
  const CliRun r = run_cli({"scan", "--signal", kFixtures + "/two_tone.json", "--range", "0", "3", "--threshold",
                            "0.5", "--format", "csv", "--out", out});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  const std::string csv = read_file(out);
  CHECK(csv.rfind("lambda,re,im,magnitude\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 302);
  const json doc = json::parse(read_file(out + ".json"));
  CHECK(doc["result"]["exponents"].size() == 2);
}

TEST_CASE("help lists every flag with its default") {
  const CliRun scan = run_cli({"scan", "--help"});
  CHECK(scan.code == 0);
  for (const char* text : {"--range", "--step", "[0.01]", "--threshold", "--window", "--out", "--format", "--config",
                           "--signal", "--zeta-x", "--zeta-N"}) {
    CHECK(scan.out.find(text) != std::string::npos);
  }
  const CliRun mean = run_cli({"mean", "--help"});
  for (const char* text : {"--tol", "[1e-05]", "--t-initial", "[64]", "--growth", "[2]", "--max-doublings", "[16]"}) {
    CAPTURE(text);
    CHECK(mean.out.find(text) != std::string::npos);
  }
  const CliRun periods = run_cli({"periods", "--help"});
  CHECK(periods.out.find("[100]") != std::string::npos);
  CHECK(periods.out.find("pi/(10*max|lambda|)") != std::string::npos);
  const CliRun bound = run_cli({"bound-check", "--help"});
  CHECK(bound.out.find("--n") != std::string::npos);
  CHECK(run_cli({"--help"}).code == 0);
}
