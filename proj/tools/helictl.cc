// Copyright 2026 The helictl Authors
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

// helictl: simulate, design and certify the 2-DOF helicopter controller.

#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "helictl/commands.h"

int main(int argc, char** argv) {
  using helictl::cli::ArtifactFormat;

  CLI::App app{"Pole-placement controller toolkit for a 2-DOF helicopter rig"};
  app.require_subcommand(1);
  app.fallthrough();

  helictl::cli::CommonOptions common;
  std::string out_dir = "out";
  std::optional<std::uint64_t> seed;
  std::string format = "both";
  const std::map<std::string, ArtifactFormat> formats{
      {"csv", ArtifactFormat::kCsv}, {"svg", ArtifactFormat::kSvg}, {"both", ArtifactFormat::kBoth}};

  app.add_option("--out", out_dir, "Output directory")->capture_default_str();
  app.add_option("--seed", seed, "Override every scenario seed");
  app.add_option("--format", format, "Artifacts to write: csv, svg or both")
      ->check(CLI::IsMember({"csv", "svg", "both"}))
      ->capture_default_str();

  std::string sim_config;
  auto* simulate = app.add_subcommand("simulate", "Run every scenario of a config file");
  simulate->add_option("config", sim_config, "Scenario file")->required();

  std::string cert_config;
  auto* certify = app.add_subcommand("certify", "Write stability certificates for a config file");
  certify->add_option("config", cert_config, "Scenario file")->required();

  helictl::cli::DesignOptions design;
  auto* design_cmd = app.add_subcommand("design", "Gains from overshoot and settling time");
  design_cmd->add_option("--overshoot", design.overshoot, "Peak overshoot as a fraction, e.g. 0.01");
  design_cmd->add_option("--settling", design.settling, "Settling time in seconds");
  design_cmd->add_option("--band", design.band, "Settling band, 0.02 or 0.05")->capture_default_str();
  design_cmd->add_option("--ratio", design.ratio, "Extra poles at ratio times zeta*omega_n")
      ->capture_default_str();
  design_cmd->add_option("--plant", design.plant, "Plant coefficients a1,a2,... (ascending)")
      ->delimiter(',');
  design_cmd->add_option("--snippet", design.snippet, "Print k-lines for pitch or yaw");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return helictl::cli::kExitUsage;
  }

  common.out_dir = out_dir;
  common.seed = seed;
  common.format = formats.at(format);

  if (*simulate) return helictl::cli::cmd_simulate(sim_config, common, std::cout, std::cerr);
  if (*certify) return helictl::cli::cmd_certify(cert_config, common, std::cout, std::cerr);
  return helictl::cli::cmd_design(design, std::cout, std::cerr);
}
