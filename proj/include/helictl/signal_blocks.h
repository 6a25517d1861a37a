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
/// Discrete building blocks of the rig's control loop: derivative filter,
/// back-calculation integrator, encoder quantizer and actuator saturation.

#include <span>
#include <stdexcept>
#include <vector>

namespace helictl::sim {

/// Affine torque→voltage relation V = gain·T + offset.
struct TorqueVoltageMap {
  double gain = 1.0;    // V per N·m
  double offset = 0.0;  // V

  double to_voltage(double torque) const { return gain * torque + offset; }
  double to_torque(double voltage) const { return (voltage - offset) / gain; }
  bool is_identity() const { return gain == 1.0 && offset == 0.0; }
};

struct SaturationResult {
  double voltage = 0.0;
  double torque_effective = 0.0;
  bool saturated = false;
};

SaturationResult apply_saturation(double torque, const TorqueVoltageMap& map,
                                  double v_limit);

/// resolution · round_half_away_from_zero(angle / resolution)
double quantize_encoder(double angle, double resolution);

/// Bilinear-transform realisation of wc²·s / (s² + 2ζ·wc·s + wc²): a
/// differentiator followed by a second-order low-pass. Requires wc·dt < 0.5.
class FilteredDerivative {
 public:
  FilteredDerivative(double zeta, double wc, double dt);

  /// Puts the filter at rest on a constant input x0 (output 0).
  void reset(double x0);
  double step(double x);

 private:
  double b0_ = 0.0, b2_ = 0.0;  // b1 is identically zero
  double a1_ = 0.0, a2_ = 0.0;
  double x1_ = 0.0, x2_ = 0.0;
  double y1_ = 0.0, y2_ = 0.0;
};

std::vector<double> filtered_derivative(std::span<const double> samples,
                                        double zeta, double wc, double dt);

/// Back-calculation integrator: state += dt·[error + (u_sat − u_cmd)/Tt].
/// An infinite Tt disables the back-calculation term.
class AntiWindupIntegrator {
 public:
  explicit AntiWindupIntegrator(double reset_time_s, double initial = 0.0);

  double step(double error, double u_cmd, double u_sat, double dt);
  double state() const { return state_; }

 private:
  double reset_time_s_;
  double state_;
};

/// Stream form: returns the state after each sample.
std::vector<double> antiwindup_integrator(std::span<const double> error,
                                          std::span<const double> u_cmd,
                                          std::span<const double> u_sat,
                                          double reset_time_s, double dt);

}  // namespace helictl::sim
