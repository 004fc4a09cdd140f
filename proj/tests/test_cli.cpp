#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "helpers.hpp"
#include "korteweg/cli.hpp"

using namespace korteweg;
using nlohmann::json;
using testing_util::kind_of;

namespace {

std::string temp_dir(const std::string& name) {
  const auto p = std::filesystem::temp_directory_path() / ("korteweg_test_" + name);
  std::filesystem::remove_all(p);
  return p.string();
}

}  // namespace

TEST_CASE("config parsing") {
  const cli::ScenarioConfig c =
      cli::parse_config(json::parse(R"({"params": {"mu": 2, "nu": 1, "kappa": 3}, "lambda": {"re": 1, "im": 2}})"),
                        "validate");
  CHECK(c.scenario == "validate");
  CHECK(c.params.mu == 2.0);
  CHECK(c.lambda == cplx(1.0, 2.0));

  CHECK(kind_of([] { cli::parse_config(json::parse(R"({"params": {"mu": 1, "bogus": 2}})"), "validate"); }) ==
        ErrorKind::ConfigError);
  CHECK(kind_of([] { cli::parse_config(json::parse(R"({"extra": 1})"), "scan"); }) == ErrorKind::ConfigError);
  CHECK(kind_of([] { cli::parse_config(json::parse(R"({"params": {"mu": "x"}})"), "scan"); }) ==
        ErrorKind::ConfigError);
  CHECK(kind_of([] { cli::parse_config(json::parse(R"({"scenario": "scan"})"), "solve"); }) ==
        ErrorKind::ConfigError);
}

TEST_CASE("exit codes") {
  CHECK(cli::exit_code_for(ErrorKind::ConfigError) == 2);
  CHECK(cli::exit_code_for(ErrorKind::EtaVanishes) == 2);
  CHECK(cli::exit_code_for(ErrorKind::SingularLopatinskii) == 3);
  CHECK(cli::exit_code_for(ErrorKind::NeumannDiverged) == 3);
  CHECK(cli::exit_code_for(ErrorKind::IoError) == 4);
}

TEST_CASE("validate scenario rejects a degenerate model") {
  cli::ScenarioConfig c = cli::parse_config(json::parse(R"({"params": {"mu": 1, "nu": 1, "kappa": 1}})"), "validate");
  c.out_dir = temp_dir("validate");
  const cli::RunResult r = cli::run(c);
  CHECK(r.exit_code == 2);
  CHECK(r.message.find("EtaVanishes") != std::string::npos);
  CHECK(std::filesystem::exists(c.out_dir + "/report.json"));
}

TEST_CASE("solve-full scenario on manufactured data") {
  cli::ScenarioConfig c = cli::parse_config(json::parse(R"({
      "scenario": "solve-full", "params": {"mu": 1, "nu": 1, "kappa": 2},
      "lambda": {"modulus": 50, "arg": 0.4},
      "grid": {"M": 32, "H": 10, "MN": 256}, "seed": 7})"),
                                            "solve");
  c.out_dir = temp_dir("solve");
  const cli::RunResult r = cli::run(c);
  REQUIRE(r.exit_code == 0);
  CHECK(r.report["residual"]["relative"].get<double>() <= 1e-8);
  CHECK(r.report["recovery_error"].get<double>() <= 1e-8);
}

TEST_CASE("scan scenario reports sigma star") {
  cli::ScenarioConfig c = cli::parse_config(json::parse(R"({
      "params": {"mu": 1, "nu": 1, "kappa": 2},
      "scan": {"target": "l1", "n_lambda": 12, "n_angle": 5, "n_xi": 12}})"),
                                            "scan");
  c.out_dir = temp_dir("scan");
  c.format = "csv";
  const cli::RunResult r = cli::run(c);
  REQUIRE(r.exit_code == 0);
  CHECK(r.report["scan"]["C"].get<double>() > 0.0);
  CHECK(r.report.contains("sigma_star"));
  CHECK(std::filesystem::exists(c.out_dir + "/scan.csv"));
}

TEST_CASE("runs are deterministic for a fixed seed") {
  const json doc = json::parse(R"({
      "params": {"mu": 1, "nu": 1, "kappa": 2, "gamma": 0.1},
      "probe": {"moduli": [1, 100], "grid": {"M": 8, "H": 4, "MN": 32}}, "seed": 9})");
  cli::ScenarioConfig a = cli::parse_config(doc, "probe"), b = a;
  a.out_dir = temp_dir("det_a");
  b.out_dir = temp_dir("det_b");
  auto ra = cli::run(a), rb = cli::run(b);
  REQUIRE(ra.exit_code == 0);
  ra.report.erase("generated_at");
  rb.report.erase("generated_at");
  CHECK(ra.report == rb.report);
}

TEST_CASE("unwritable output directory") {
  cli::ScenarioConfig c = cli::parse_config(json::parse(R"({"params": {"mu": 1, "nu": 1, "kappa": 2}})"), "validate");
  c.out_dir = "/proc/korteweg_no_such_dir";
  CHECK(cli::run(c).exit_code == 4);
}
