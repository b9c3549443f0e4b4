#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hkp/dirichlet.hpp"
#include "hkp/estimates.hpp"
#include "hkp/quadrature.hpp"
#include "hkp_cli/report.hpp"

namespace hkp::cli {

struct CommandSpec {
  std::string subcommand;
  std::string function_spec;
  std::vector<std::string> p;   // norm selectors: real >= 1, "inf", "alexiewicz"
  std::vector<double> r_grid;   // empty selects default_r_grid()
  QuadratureSpec quad;
  std::optional<std::string> expect;
  std::filesystem::path base_dir;  // for relative file names inside specs

  std::string name;             // example / dirichlet: "b" or "c"
  std::string profile = "linear";  // slowdecay: linear | exp | <csv file>
  double exponent = 0.5;        // sharpness: psi = (1 - r)^-exponent
  int count = 12;               // sharpness: sequence length
  int certify = 10;             // sharpness: retained indices to certify
  std::vector<int> family{2, 5, 10, 50};
  std::string spikes_out;
  std::optional<std::pair<double, double>> witness;  // bv-check
  std::vector<double> witness_r{0.999};
  int n_coeffs = 8;             // dirichlet
  int n_theta = 64;             // dirichlet
  double tol = 1e-8;
};

struct RunResult {
  ScanReport report;
  int exit_code = 0;  // 0 all verdicts as expected, 1 otherwise, 2 error
};

Norm parse_norm(const std::string& text);
std::vector<double> parse_real_list(const std::string& text);

/// Structured record mirroring UniquenessReport field for field.
nlohmann::ordered_json to_json(const UniquenessReport& rep);

RunResult run(const CommandSpec& cmd);

}  // namespace hkp::cli
