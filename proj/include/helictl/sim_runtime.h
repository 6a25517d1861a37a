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
/// Deterministic fixed-step closed-loop simulation of the helicopter rig and
/// of the general nth-order LTI loop.

#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "helictl/disturbance.h"
#include "helictl/gain_design.h"
#include "helictl/heli_dynamics.h"
#include "helictl/lti_core.h"
#include "helictl/signal_blocks.h"
#include "helictl/trace.h"

namespace helictl::sim {

enum class PlantModel { kFull, kSmallAngle, kRefinedLinear };

/// kSampled reproduces the rig: quantized encoders, filtered derivatives,
/// discrete back-calculation integrators, torque held between controller
/// updates. kContinuous evaluates the ideal law on the true state inside
/// every Runge–Kutta stage, with the integrators part of the ODE state.
enum class ControllerMode { kSampled, kContinuous };

inline constexpr double kDegree = std::numbers::pi / 180.0;

struct RuntimeConfig {
  double dt = 1e-3;
  double t_end = 30.0;
  /// Controller period; 0 means every plant step. Must be a multiple of dt.
  double ctrl_dt = 0.0;

  double theta_d = 0.0;
  double psi_d = 0.0;
  double theta0 = 0.0;
  double psi0 = 0.0;
  double theta_dot0 = 0.0;
  double psi_dot0 = 0.0;
  /// Initial z₁ = ∫(θ−θ_d) and z₂ = ∫(ψ−ψ_d).
  double z1_0 = 0.0;
  double z2_0 = 0.0;

  double filter_zeta = 0.85;
  double filter_wc = 40.0 * std::numbers::pi;  // rad/s
  /// Back-calculation reset time; +infinity disables it.
  double antiwindup_reset_s = 1.0;
  double v_limit_pitch = 24.0;
  double v_limit_yaw = 15.0;
  double enc_res_pitch = 2.0 * std::numbers::pi / 4096.0;
  double enc_res_yaw = 2.0 * std::numbers::pi / 8192.0;
  bool quantize = true;

  PlantModel model = PlantModel::kFull;
  heli::PsiCoupling psi_coupling = heli::PsiCoupling::kSolved;
  bool include_residual = true;  // refined linear model only
  ControllerMode controller = ControllerMode::kSampled;
  heli::GainConvention gain_convention = heli::GainConvention::kTorque;
  bool gravity_bias = true;
  TorqueVoltageMap map_pitch;
  TorqueVoltageMap map_yaw;

  bool travel_limits = true;
  double theta_min = -40.5 * kDegree;
  double theta_max = 35.0 * kDegree;

  /// Before this time the voltage limits below replace the normal ones.
  double forced_saturation_until = 0.0;
  double forced_v_limit_pitch = 24.0;
  double forced_v_limit_yaw = 15.0;

  /// Keep every n-th step in the trace.
  int record_stride = 1;

  void validate() const;
  long step_count() const;
  long ctrl_steps() const;
};

/// A parameter set with matching actuator maps.
struct RigProfile {
  heli::HeliParams params;
  TorqueVoltageMap map_pitch;
  TorqueVoltageMap map_yaw;
};

/// Plausible-rig parameters plus thrust-constant voltage maps. NOT from any
/// published experiment.
RigProfile plausible_rig();

class SimulationError : public std::runtime_error {
 public:
  SimulationError(const std::string& what, double t)
      : std::runtime_error(what), t_(t) {}
  /// Simulated time of the first failure.
  double time() const { return t_; }

 private:
  double t_;
};

inline constexpr double kDivergenceLimit = 1e6;

SimTrace run(const heli::HeliParams& params, const design::GainPreset& gains,
             const RuntimeConfig& cfg, const DisturbanceSignal& dist);

/// Open-loop integration of a plant model under constant torques; returns
/// the state after every step, starting with `initial`.
std::vector<heli::HeliState> integrate_open_loop(
    const heli::HeliParams& params, const heli::HeliState& initial,
    const heli::Torques& torques, PlantModel model, double dt, long steps);

/// Output of the general LTI loop.
struct LtiTrace {
  std::vector<double> t;
  std::vector<double> x;
};

/// Simulates x⁽ⁿ⁾ + Σaᵢx⁽ⁱ⁻¹⁾ = u + T(t) under u = b₀∫y + Σbᵢy⁽ⁱ⁻¹⁾,
/// y = x_d − x, from rest. The disturbance is sampled at the start of each
/// step and held.
LtiTrace simulate_lti_loop(const lti::PlantCoeffs& plant,
                           const lti::ControllerGains& gains, double x_d,
                           const std::function<double(double)>& disturbance,
                           double dt, double t_end);

}  // namespace helictl::sim
