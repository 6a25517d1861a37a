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
/// Monte-Carlo certification of a scenario and its plain-text report.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "helictl/scenario.h"
#include "helictl/stability_cert.h"

namespace helictl::cli {

/// Settings of one certification simulation: small-angle plant under the
/// continuous controller, no sensing artifacts, no saturation, no stops,
/// started at error state `z0`.
sim::RuntimeConfig certification_runtime(const Scenario& s, const heli::StateZ& z0);

/// Initial error states with uniformly random directions and norms in
/// (0, fraction·z0_max]. Deterministic per seed.
std::vector<heli::StateZ> sample_initial_states(const cert::Certificate& c,
                                                const CertSettings& settings);

/// Error state of the scenario's own initial condition.
heli::StateZ scenario_initial_state(const Scenario& s);

struct TrajectoryConvergence {
  cert::ConvergenceReport report;
  /// d at t₂ = 40 s (or the last grid point before it).
  double d_at_40 = 0.0;
  bool rate_ok = false;
  bool pass = false;
};

struct CertificationRun {
  std::string scenario;
  std::string gains;
  heli::GainConvention convention = heli::GainConvention::kTorque;
  double theta_d = 0.0;
  double psi_d = 0.0;
  cert::Certificate certificate;
  double scenario_z0_norm = 0.0;
  std::optional<double> scenario_gamma;
  std::vector<heli::StateZ> initial_states;
  cert::BoundednessReport boundedness;
  std::vector<TrajectoryConvergence> convergence;
  std::size_t convergence_failures = 0;
  cert::BoundednessEntry trivial;
  bool pass = false;
};

/// Relative tolerance on the fitted decay rate against |Re λ₁|.
inline constexpr double kRateTolerance = 0.25;
inline constexpr double kConvergenceLag = 5.0;
inline constexpr double kConvergenceCheckTime = 40.0;
inline constexpr double kConvergenceTolerance = 1e-4;

TrajectoryConvergence check_convergence(const cert::Certificate& c,
                                        const sim::SimTrace& trace, double horizon);

/// Throws cert::UnstableSystemError, cert::NotDiagonalizableError or
/// sim::SimulationError.
CertificationRun certify_scenario(const Scenario& s);

std::string format_report(const CertificationRun& run);

}  // namespace helictl::cli
