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

#include "helictl/gain_design.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace helictl::design {

void PerfSpec::validate() const {
  if (!(overshoot_fraction > 0.0 && overshoot_fraction < 1.0)) {
    throw std::invalid_argument("overshoot fraction must lie in (0, 1)");
  }
  if (!(settling_time_s > 0.0) || !std::isfinite(settling_time_s)) {
    throw std::invalid_argument("settling time must be positive");
  }
  if (settling_band != 0.02 && settling_band != 0.05) {
    throw std::invalid_argument("settling band must be 0.02 or 0.05");
  }
  if (!(nondominant_pole_ratio >= 5.0)) {
    throw std::invalid_argument("non-dominant pole ratio must be >= 5");
  }
}

double GainPreset::k(int i) const {
  if (i >= 1 && i <= 3) return pitch[static_cast<std::size_t>(i - 1)];
  if (i >= 4 && i <= 6) return yaw[static_cast<std::size_t>(i - 4)];
  throw std::out_of_range("gain index must be 1..6");
}

void GainPreset::validate() const {
  for (int i = 1; i <= 6; ++i) {
    if (!std::isfinite(k(i))) {
      throw std::invalid_argument("gain k" + std::to_string(i) + " is not finite");
    }
  }
}

double damping_from_overshoot(double overshoot_fraction) {
  if (!(overshoot_fraction > 0.0 && overshoot_fraction < 1.0)) {
    throw std::invalid_argument("overshoot fraction must lie in (0, 1)");
  }
  const double ln_mp = std::log(overshoot_fraction);
  return std::abs(ln_mp) / std::sqrt(std::numbers::pi * std::numbers::pi + ln_mp * ln_mp);
}

double natural_frequency(double zeta, const PerfSpec& spec) {
  if (!(zeta > 0.0 && zeta < 1.0)) {
    throw std::invalid_argument("damping ratio must lie in (0, 1)");
  }
  if (!(spec.settling_time_s > 0.0)) {
    throw std::invalid_argument("settling time must be positive");
  }
  double c = 0.0;
  if (spec.settling_band == 0.02) {
    c = 4.0;
  } else if (spec.settling_band == 0.05) {
    c = 3.0;
  } else {
    throw std::invalid_argument("settling band must be 0.02 or 0.05");
  }
  return c / (zeta * spec.settling_time_s);
}

lti::CharPoly desired_charpoly(double zeta, double wn, int extra_poles,
                               double ratio) {
  if (!(zeta > 0.0 && zeta < 1.0)) {
    throw std::invalid_argument("damping ratio must lie in (0, 1)");
  }
  if (!(wn > 0.0) || !std::isfinite(wn)) {
    throw std::invalid_argument("natural frequency must be positive");
  }
  if (extra_poles < 0) {
    throw std::invalid_argument("extra pole count must be non-negative");
  }
  if (extra_poles > 0 && !(ratio >= 5.0)) {
    throw std::invalid_argument("non-dominant pole ratio must be >= 5");
  }
  lti::CharPoly p({wn * wn, 2.0 * zeta * wn, 1.0});
  const lti::CharPoly extra({ratio * zeta * wn, 1.0});
  for (int j = 0; j < extra_poles; ++j) p = lti::multiply(p, extra);
  return p;
}

lti::ControllerGains gains_from_desired(const lti::PlantCoeffs& plant,
                                        const lti::CharPoly& desired) {
  const int n = plant.order();
  if (desired.degree() != n + 1) {
    throw lti::DimensionMismatch("desired polynomial degree " +
                                 std::to_string(desired.degree()) +
                                 " does not equal plant order + 1 = " +
                                 std::to_string(n + 1));
  }
  lti::ControllerGains g;
  g.b0 = desired[0];
  g.b.resize(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) {
    const double a = plant.a(i);
    const double d = desired[i];
    double b = d - a;
    // d − a is rounded, so a + b can land an ulp away from d.
    for (int nudge = 0; nudge < 8 && a + b != d; ++nudge) {
      b = std::nextafter(b, a + b < d ? HUGE_VAL : -HUGE_VAL);
    }
    if (a + b != d) {
      throw std::domain_error("coefficient " + std::to_string(i) +
                              " of the desired polynomial is not reachable "
                              "exactly from the plant coefficient");
    }
    g.b[static_cast<std::size_t>(i - 1)] = b;
  }
  return g;
}

GainPreset paper_gain_preset() {
  return GainPreset{std::string(kDefaultPresetName),
                    {1.7431, 2.4095, 0.3849},
                    {1.8398, 2.5431, 0.9326}};
}

std::optional<GainPreset> find_preset(std::string_view name) {
  if (name == kDefaultPresetName) return paper_gain_preset();
  return std::nullopt;
}

}  // namespace helictl::design
