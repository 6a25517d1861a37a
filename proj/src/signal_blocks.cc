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

#include "helictl/signal_blocks.h"

#include <algorithm>
#include <cmath>

namespace helictl::sim {

SaturationResult apply_saturation(double torque, const TorqueVoltageMap& map,
                                  double v_limit) {
  if (map.gain == 0.0) {
    throw std::invalid_argument("torque-to-voltage gain must be non-zero");
  }
  if (!(v_limit > 0.0)) {
    throw std::invalid_argument("voltage limit must be positive");
  }
  const double v_cmd = map.to_voltage(torque);
  const double v = std::clamp(v_cmd, -v_limit, v_limit);
  SaturationResult r;
  r.voltage = v;
  r.saturated = v != v_cmd;
  r.torque_effective = r.saturated ? map.to_torque(v) : torque;
  return r;
}

double quantize_encoder(double angle, double resolution) {
  if (!(resolution > 0.0)) {
    throw std::invalid_argument("encoder resolution must be positive");
  }
  // std::round rounds half away from zero.
  return resolution * std::round(angle / resolution);
}

FilteredDerivative::FilteredDerivative(double zeta, double wc, double dt) {
  if (!(dt > 0.0) || !(wc > 0.0) || !(zeta > 0.0)) {
    throw std::invalid_argument("filter needs positive zeta, wc and dt");
  }
  if (!(wc * dt < 0.5)) {
    throw std::invalid_argument(
        "derivative filter under-sampled: wc·dt must be below 0.5");
  }
  const double k = 2.0 / dt;
  const double w2 = wc * wc;
  const double a0 = k * k + 2.0 * zeta * wc * k + w2;
  b0_ = w2 * k / a0;
  b2_ = -b0_;
  a1_ = (2.0 * w2 - 2.0 * k * k) / a0;
  a2_ = (k * k - 2.0 * zeta * wc * k + w2) / a0;
}

void FilteredDerivative::reset(double x0) {
  x1_ = x2_ = x0;
  y1_ = y2_ = 0.0;
}

double FilteredDerivative::step(double x) {
  const double y = b0_ * x + b2_ * x2_ - a1_ * y1_ - a2_ * y2_;
  x2_ = x1_;
  x1_ = x;
  y2_ = y1_;
  y1_ = y;
  return y;
}

std::vector<double> filtered_derivative(std::span<const double> samples,
                                        double zeta, double wc, double dt) {
  FilteredDerivative f(zeta, wc, dt);
  std::vector<double> out;
  out.reserve(samples.size());
  if (samples.empty()) return out;
  f.reset(samples.front());
  for (double x : samples) out.push_back(f.step(x));
  return out;
}

AntiWindupIntegrator::AntiWindupIntegrator(double reset_time_s, double initial)
    : reset_time_s_(reset_time_s), state_(initial) {
  if (!(reset_time_s > 0.0)) {
    throw std::invalid_argument("integral reset time must be positive");
  }
}

double AntiWindupIntegrator::step(double error, double u_cmd, double u_sat,
                                  double dt) {
  double rate = error;
  if (std::isfinite(reset_time_s_)) rate += (u_sat - u_cmd) / reset_time_s_;
  state_ += dt * rate;
  return state_;
}

std::vector<double> antiwindup_integrator(std::span<const double> error,
                                          std::span<const double> u_cmd,
                                          std::span<const double> u_sat,
                                          double reset_time_s, double dt) {
  if (error.size() != u_cmd.size() || error.size() != u_sat.size()) {
    throw std::invalid_argument("anti-windup streams differ in length");
  }
  AntiWindupIntegrator integ(reset_time_s);
  std::vector<double> out;
  out.reserve(error.size());
  for (std::size_t i = 0; i < error.size(); ++i) {
    out.push_back(integ.step(error[i], u_cmd[i], u_sat[i], dt));
  }
  return out;
}

}  // namespace helictl::sim
