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

#include <cstdint>
#include <istream>
#include <vector>

#include "helictl/heli_dynamics.h"

namespace helictl::sim {

enum class DisturbanceKind { kNone, kPiecewiseConstant, kStep, kImpulseTrain };

enum class DisturbanceAxes { kPitch, kYaw, kBoth };

struct Breakpoint {
  double t = 0.0;      // s
  double value = 0.0;  // N·m, or N·m·s for impulse areas
};

/// Additive torque disturbance at the plant input, one breakpoint table per
/// axis.
///  - kPiecewiseConstant: value i holds on [tᵢ, tᵢ₊₁); zero before t₀.
///  - kStep: like piecewise constant, conventionally a single breakpoint.
///  - kImpulseTrain: each breakpoint is an impulse of area `value`, applied
///    as value/dt over the integration step that contains tᵢ.
struct DisturbanceSignal {
  DisturbanceKind kind = DisturbanceKind::kNone;
  std::vector<Breakpoint> pitch;
  std::vector<Breakpoint> yaw;
  std::uint64_t seed = 0;

  void validate() const;
  /// Value held over the step [t, t + dt).
  heli::Torques value_at(double t, double dt) const;
  /// Number of levels (breakpoints) on the pitch and yaw tables combined.
  std::size_t level_count() const { return pitch.size() + yaw.size(); }
};

DisturbanceSignal no_disturbance();
DisturbanceSignal step_disturbance(double t0, heli::Torques magnitude);

/// Uniform random levels in [−amplitude, +amplitude], each held for `dwell`
/// seconds, covering [0, t_end). Deterministic per seed on every platform.
DisturbanceSignal make_piecewise_disturbance(
    std::uint64_t seed, double dwell, double amplitude, double t_end,
    DisturbanceAxes axes = DisturbanceAxes::kPitch);

/// Reads a (t, value) step table: one pair per line, comma separated. Blank
/// lines, '#' comments and a non-numeric header line are skipped.
std::vector<Breakpoint> read_step_table(std::istream& in);

}  // namespace helictl::sim
