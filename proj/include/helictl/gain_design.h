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
/// Dominant-pole gain design: second-order performance targets become a
/// desired monic characteristic polynomial, which is then matched
/// coefficient by coefficient against the closed-loop denominator.

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "helictl/lti_core.h"

namespace helictl::design {

struct PerfSpec {
  double overshoot_fraction = 0.01;
  double settling_time_s = 4.0;
  /// 0.02 (c = 4) or 0.05 (c = 3).
  double settling_band = 0.02;
  /// Extra real poles sit at ratio·ζ·ωₙ.
  double nondominant_pole_ratio = 5.0;

  void validate() const;
};

/// Six helicopter gains. Pitch: T_θ = −k₁z₁ − k₂z₃ − k₃z₅.
/// Yaw: T_ψ = −k₄z₂ − k₅z₄ − k₆z₆. Stored positive; the runtime applies the
/// minus sign.
struct GainPreset {
  std::string name;
  std::array<double, 3> pitch{};  // k1, k2, k3
  std::array<double, 3> yaw{};    // k4, k5, k6

  /// One-based k₁..k₆.
  double k(int i) const;
  void validate() const;
};

inline constexpr std::string_view kDefaultPresetName = "paper2dof";

/// ζ = |ln Mp| / √(π² + ln² Mp).
double damping_from_overshoot(double overshoot_fraction);

/// ωₙ = c / (ζ·Tₛ), c = 4 for the 2 % band and 3 for the 5 % band.
double natural_frequency(double zeta, const PerfSpec& spec);

/// (s² + 2ζωₙs + ωₙ²) · Π (s + ratio·ζωₙ), `extra_poles` times.
lti::CharPoly desired_charpoly(double zeta, double wn, int extra_poles,
                               double ratio = 5.0);

/// Inverts the closed-loop coefficient map: b₀ = d₀, bᵢ = dᵢ − aᵢ. Each bᵢ
/// is nudged by at most a few ulps so that aᵢ + bᵢ reproduces dᵢ exactly in
/// floating point.
lti::ControllerGains gains_from_desired(const lti::PlantCoeffs& plant,
                                        const lti::CharPoly& desired);

/// Gain set used on the laboratory rig (1 % overshoot, 4 s settling).
GainPreset paper_gain_preset();

std::optional<GainPreset> find_preset(std::string_view name);

}  // namespace helictl::design
