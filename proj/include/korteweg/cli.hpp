#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "korteweg/core_model.hpp"
#include "korteweg/symbols.hpp"

namespace korteweg::cli {

struct GridSettings {
  int dim_t = 1;
  int M = 32;
  double L = 2.0 * kPi;
  double H = 10.0;
  int MN = 256;
  int normal_points = 129;  // Chebyshev samples for solve-half
};

struct ScanSettings {
  std::string target = "l1";
  ScanGrid grid;
  double sigma_offset = 0.2;  // sigma = sigma_w + offset unless sector.sigma is given
  bool refine = true;
  bool sigma_star = true;
};

struct SolveSettings {
  std::string data = "manufactured";  // manufactured | random
  int max_iter = 64;
  double tol = 1e-10;
  bool auto_lambda0 = false;
  double angle = 0.0;
  bool write_fields = false;
};

struct RBoundSettings {
  std::vector<std::string> families{"S", "T", "dS", "dT"};
  int m_max = 8;
  int trials = 200;
  double lambda_max = 100.0;
  bool general = false;
  GridSettings grid{1, 16, 2.0 * kPi, 4.0, 32, 129};
};

struct ProbeSettings {
  std::vector<double> moduli{1.0, 10.0, 100.0, 1000.0, 10000.0};
  double angle = 0.0;
  GridSettings grid{1, 32, 2.0 * kPi, 5.0, 64, 129};
};

struct ScenarioConfig {
  std::string scenario;  // validate | scan | solve-whole | solve-half | solve-full | rbound | probe-contraction
  MaterialParams params;
  bool physical = false;  // rescale by rho_ref before use
  std::optional<double> sigma;
  double delta = 0.0;
  cplx lambda{50.0 * std::cos(0.4), 50.0 * std::sin(0.4)};
  GridSettings grid;
  ScanSettings scan;
  SolveSettings solve;
  RBoundSettings rbound;
  ProbeSettings probe;
  std::uint64_t seed = 1;
  std::string out_dir = "out";
  std::string format = "json";
};

// Subcommand names accepted on the command line.
const std::vector<std::string>& subcommands();

// Throws Error(ConfigError) on unknown keys, bad types or values.
ScenarioConfig parse_config(const nlohmann::json& doc, const std::string& subcommand);

int exit_code_for(ErrorKind kind);

struct RunResult {
  int exit_code = 0;
  nlohmann::ordered_json report;
  std::string message;
};

// Executes the scenario and writes report.json (plus CSV / binary fields) to
// out_dir. Errors are mapped to exit codes rather than thrown.
RunResult run(const ScenarioConfig& cfg);

int main(int argc, char** argv);

}  // namespace korteweg::cli
