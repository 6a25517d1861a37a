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

#include <vector>

#include "helictl/heli_dynamics.h"

namespace helictl::sim {

/// One sample of a closed-loop run. z₁/z₂ are the controller's integrator
/// states; z₃..z₆ are the true plant errors and rates.
struct TraceRow {
  double t = 0.0;
  double theta = 0.0, psi = 0.0;
  double theta_dot = 0.0, psi_dot = 0.0;
  double theta_meas = 0.0, psi_meas = 0.0;
  heli::StateZ z = heli::StateZ::Zero();
  double T_theta = 0.0, T_psi = 0.0;
  double V_pitch = 0.0, V_yaw = 0.0;
  double d_theta = 0.0, d_psi = 0.0;
  double E = 0.0;
};

struct SimTrace {
  /// Time between consecutive rows.
  double row_dt = 0.0;
  double theta_d = 0.0;
  double psi_d = 0.0;
  std::vector<TraceRow> rows;
  /// Number of times the pitch axis hit a travel stop.
  int clamp_events = 0;
  /// Time of the first stop contact, negative when there was none.
  double first_clamp_t = -1.0;

  double duration() const { return rows.empty() ? 0.0 : rows.back().t - rows.front().t; }
};

}  // namespace helictl::sim
