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

#include <ostream>
#include <string>
#include <string_view>

#include "helictl/trace.h"

namespace helictl::sim {

/// Column names of the trace CSV, time first, each carrying its unit.
inline constexpr std::string_view kTraceCsvHeader =
    "t_s,theta_rad,psi_rad,theta_dot_rad_per_s,psi_dot_rad_per_s,"
    "theta_meas_rad,psi_meas_rad,z1_rad_s,z2_rad_s,z3_rad,z4_rad,"
    "z5_rad_per_s,z6_rad_per_s,T_theta_N_m,T_psi_N_m,V_pitch_V,V_yaw_V,"
    "d_theta_N_m,d_psi_N_m,E_J";

/// 17 significant digits with '.' as decimal separator, whatever the locale.
std::string format_double(double v);

/// Header line plus one row per sample, '\n' line endings.
void write_trace_csv(std::ostream& out, const SimTrace& trace);

std::string trace_csv(const SimTrace& trace);

}  // namespace helictl::sim
