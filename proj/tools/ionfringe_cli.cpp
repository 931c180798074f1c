// Copyright 2026 The ionfringe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// ionfringe: steady states, intensity fringes and photon correlations of two
// driven ions. Exit codes: 0 success, 1 validation failure, 2 configuration
// or input error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "ionfringe/app/commands.hpp"
#include "ionfringe/app/validation.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kValidationFailed = 1;
constexpr int kConfigError = 2;

}  // namespace

int main(int argc, char** argv) {
  using namespace ionfringe::app;

  CLI::App app{"Two-ion fluorescence interference simulator"};
  app.require_subcommand(1);

  std::string config_path, output_path, format;
  std::optional<std::uint64_t> seed;
  bool inject_rho22 = false;

  app.add_option("--config", config_path, "INI run configuration (defaults if omitted)");
  app.add_option("--output", output_path, "Output file (default: output.path, else stdout)");
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--seed", seed, "Override mc.seed");

  auto* steady = app.add_subcommand("steady-state", "Analytic, null-space and quantum-jump steady states");
  auto* iscan = app.add_subcommand("intensity-scan", "Intensity fringes over the scan plane");
  auto* gscan = app.add_subcommand("g2-scan", "Intensity correlations, detector 2 swept");
  auto* validate = app.add_subcommand("validate", "Run the invariant groups");
  validate->add_flag("--inject-printed-rho22", inject_rho22)->group("");
  for (auto* sub : {steady, iscan, gscan, validate}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  RunConfig config;
  try {
    if (!config_path.empty()) config = load_config(config_path);
    if (seed) config.seed = *seed;
    if (!output_path.empty()) config.output_path = output_path;
    if (!format.empty()) config.format = format == "csv" ? Format::csv : Format::json;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  }

  Report report;
  bool passed = true;
  try {
    if (*steady) report = steady_state_report(config);
    else if (*iscan) report = intensity_scan_report(config);
    else if (*gscan) report = g2_scan_report(config);
    else {
      const auto groups = run_validation(config, {inject_rho22});
      passed = all_passed(groups);
      report = validation_report(config, groups);
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const ionfringe::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  }

  if (config.output_path.empty()) {
    write_report(std::cout, report, config.format);
  } else {
    std::ofstream out(config.output_path, std::ios::binary);
    if (out) write_report(out, report, config.format);
    if (!out) {
      std::cerr << "error: cannot write " << config.output_path << '\n';
      return kConfigError;
    }
  }
  return passed ? kOk : kValidationFailed;
}
