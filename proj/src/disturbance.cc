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

#include "helictl/disturbance.h"

#include <cctype>
#include <charconv>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>

namespace helictl::sim {
namespace {

void validate_table(const std::vector<Breakpoint>& table, const char* axis) {
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (!std::isfinite(table[i].t) || !std::isfinite(table[i].value)) {
      throw std::invalid_argument(std::string(axis) +
                                  " disturbance breakpoint is not finite");
    }
    if (i > 0 && !(table[i].t > table[i - 1].t)) {
      throw std::invalid_argument(std::string(axis) +
                                  " disturbance breakpoints must be strictly "
                                  "increasing in time");
    }
  }
}

// Grid times are k·dt, so a breakpoint exactly on the grid may sit a few ulps
// above the computed t.
double grid_slack(double dt) { return 1e-9 * dt; }

double held_value(const std::vector<Breakpoint>& table, double t, double dt) {
  double v = 0.0;
  for (const auto& bp : table) {
    if (bp.t <= t + grid_slack(dt)) {
      v = bp.value;
    } else {
      break;
    }
  }
  return v;
}

double impulse_value(const std::vector<Breakpoint>& table, double t, double dt) {
  double v = 0.0;
  for (const auto& bp : table) {
    if (bp.t >= t - grid_slack(dt) && bp.t < t + dt - grid_slack(dt)) {
      v += bp.value / dt;
    }
  }
  return v;
}

double unit_uniform(std::mt19937_64& rng) {
  // 53 random bits → [0, 1), independent of the library's distributions.
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

bool parse_double(std::string_view s, double& out) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return false;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

}  // namespace

void DisturbanceSignal::validate() const {
  validate_table(pitch, "pitch");
  validate_table(yaw, "yaw");
}

heli::Torques DisturbanceSignal::value_at(double t, double dt) const {
  switch (kind) {
    case DisturbanceKind::kNone:
      return {};
    case DisturbanceKind::kPiecewiseConstant:
    case DisturbanceKind::kStep:
      return {held_value(pitch, t, dt), held_value(yaw, t, dt)};
    case DisturbanceKind::kImpulseTrain:
      return {impulse_value(pitch, t, dt), impulse_value(yaw, t, dt)};
  }
  return {};
}

DisturbanceSignal no_disturbance() { return {}; }

DisturbanceSignal step_disturbance(double t0, heli::Torques magnitude) {
  DisturbanceSignal d;
  d.kind = DisturbanceKind::kStep;
  if (magnitude.theta != 0.0) d.pitch.push_back({t0, magnitude.theta});
  if (magnitude.psi != 0.0) d.yaw.push_back({t0, magnitude.psi});
  return d;
}

DisturbanceSignal make_piecewise_disturbance(std::uint64_t seed, double dwell,
                                             double amplitude, double t_end,
                                             DisturbanceAxes axes) {
  if (!(dwell > 0.0)) throw std::invalid_argument("dwell must be positive");
  if (!(amplitude >= 0.0)) throw std::invalid_argument("amplitude must be >= 0");
  if (!(t_end > 0.0)) throw std::invalid_argument("t_end must be positive");

  DisturbanceSignal d;
  d.kind = DisturbanceKind::kPiecewiseConstant;
  d.seed = seed;
  std::mt19937_64 rng(seed);
  const bool want_pitch = axes != DisturbanceAxes::kYaw;
  const bool want_yaw = axes != DisturbanceAxes::kPitch;
  for (long k = 0;; ++k) {
    const double t = static_cast<double>(k) * dwell;
    if (t >= t_end - 1e-12 * t_end) break;
    // Both draws are taken every level so the pitch sequence does not depend
    // on the axis selection.
    const double vp = amplitude * (2.0 * unit_uniform(rng) - 1.0);
    const double vy = amplitude * (2.0 * unit_uniform(rng) - 1.0);
    if (want_pitch) d.pitch.push_back({t, vp});
    if (want_yaw) d.yaw.push_back({t, vy});
  }
  return d;
}

std::vector<Breakpoint> read_step_table(std::istream& in) {
  std::vector<Breakpoint> out;
  std::string line;
  int line_no = 0;
  bool header_allowed = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto comma = line.find(',');
    double t = 0.0;
    double v = 0.0;
    const bool ok = comma != std::string::npos &&
                    parse_double(std::string_view(line).substr(0, comma), t) &&
                    parse_double(std::string_view(line).substr(comma + 1), v);
    if (!ok) {
      if (header_allowed) {
        header_allowed = false;
        continue;
      }
      throw std::invalid_argument("step table line " + std::to_string(line_no) +
                                  ": expected 't,value'");
    }
    header_allowed = false;
    out.push_back({t, v});
  }
  validate_table(out, "imported");
  return out;
}

}  // namespace helictl::sim
