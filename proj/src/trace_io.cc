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

#include "helictl/trace_io.h"

#include <array>
#include <charconv>
#include <sstream>

namespace helictl::sim {

std::string format_double(double v) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                                 std::chars_format::general, 17);
  return std::string(buf.data(), res.ptr);
}

void write_trace_csv(std::ostream& out, const SimTrace& trace) {
  out << kTraceCsvHeader << '\n';
  std::string line;
  for (const TraceRow& r : trace.rows) {
    line.clear();
    const std::array<double, 20> values{
        r.t,       r.theta,     r.psi,     r.theta_dot, r.psi_dot,
        r.theta_meas, r.psi_meas, r.z(0),  r.z(1),      r.z(2),
        r.z(3),    r.z(4),      r.z(5),    r.T_theta,   r.T_psi,
        r.V_pitch, r.V_yaw,     r.d_theta, r.d_psi,     r.E};
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i > 0) line.push_back(',');
      line += format_double(values[i]);
    }
    line.push_back('\n');
    out << line;
  }
}

std::string trace_csv(const SimTrace& trace) {
  std::ostringstream s;
  write_trace_csv(s, trace);
  return s.str();
}

}  // namespace helictl::sim
