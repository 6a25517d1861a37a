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

#pragma once

/// @file
/// INI-style scenario batches.
///
///     [defaults]
///     params = plausible_rig
///     preset = paper2dof
///
///     [scenario lab]
///     theta0_deg = -40.5
///     psi_d_deg = 10
///
/// Keys in `[defaults]` apply to every scenario unless the scenario sets
/// them again. Angle keys accept a `_deg` suffix. Any key the parser does not
/// know is an error.

#include <cstdint>
#include <filesystem>
#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

#include "helictl/disturbance.h"
#include "helictl/gain_design.h"
#include "helictl/heli_dynamics.h"
#include "helictl/sim_runtime.h"

namespace helictl::cli {

enum class Output { kTraceCsv, kPlotSvg, kCertificateReport };

struct CertSettings {
  int trajectories = 100;
  double horizon_s = 60.0;
  double dt = 0.01;
  /// Monte-Carlo initial norms are drawn from (0, fraction·z0_max].
  double z0_fraction = 0.5;
  std::uint64_t seed = 1;
};

struct Scenario {
  std::string name;
  int line = 0;  // of the section header
  heli::HeliParams params;
  design::GainPreset gains;
  sim::RuntimeConfig runtime;
  sim::DisturbanceSignal disturbance;
  /// Random disturbances are regenerated when a seed override is given.
  bool random_disturbance = false;
  double random_dwell = 0.0;
  double random_amplitude = 0.0;
  sim::DisturbanceAxes random_axes = sim::DisturbanceAxes::kPitch;
  std::vector<Output> outputs{Output::kTraceCsv, Output::kPlotSvg};
  CertSettings cert;

  bool wants(Output o) const;
  /// Replaces every seed in the scenario and regenerates random inputs.
  void reseed(std::uint64_t seed);
};

struct Batch {
  std::vector<Scenario> scenarios;
  std::vector<std::string> warnings;
};

class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& source, int line, const std::string& message);
  int line() const { return line_; }

 private:
  int line_;
};

/// `base_dir` resolves relative disturbance table paths.
Batch parse_config(std::istream& in, const std::string& source_name,
                   const std::filesystem::path& base_dir);

Batch load_config(const std::filesystem::path& path);

}  // namespace helictl::cli
