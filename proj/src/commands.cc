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

#include "helictl/commands.h"

#include <cmath>
#include <fstream>
#include <future>
#include <span>

#include "helictl/cert_report.h"
#include "helictl/gain_design.h"
#include "helictl/lti_core.h"
#include "helictl/scenario.h"
#include "helictl/sim_runtime.h"
#include "helictl/svg_plot.h"
#include "helictl/trace_io.h"

namespace helictl::cli {
namespace {

struct JobResult {
  int code = kExitOk;
  std::string message;  // one line, printed to stdout on success, stderr otherwise
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open '" + path.string() + "' for writing");
  f.write(content.data(), static_cast<std::streamsize>(content.size()));
  f.close();
  if (!f) throw IoError("write to '" + path.string() + "' failed");
}

std::filesystem::path scenario_dir(const CommonOptions& o, const std::string& name) {
  std::filesystem::path dir = o.out_dir / name;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create '" + dir.string() + "': " + ec.message());
  return dir;
}

Series column(const sim::SimTrace& trace, const std::string& label, const std::string& color,
              double scale, double sim::TraceRow::*member) {
  Series s;
  s.label = label;
  s.color = color;
  s.x.reserve(trace.rows.size());
  s.y.reserve(trace.rows.size());
  for (const auto& r : trace.rows) {
    s.x.push_back(r.t);
    s.y.push_back(r.*member * scale);
  }
  return s;
}

std::string angle_plot(const Scenario& sc, const sim::SimTrace& trace, bool pitch) {
  const double to_deg = 1.0 / sim::kDegree;
  PlotSpec p;
  p.title = std::string(pitch ? "Pitch" : "Yaw") + " response, scenario " + sc.name;
  p.x_label = "time (s)";
  p.y_label = std::string(pitch ? "pitch" : "yaw") + " angle (deg)";
  p.series.push_back(column(trace, pitch ? "theta (simulated)" : "psi (simulated)", "#1f77b4",
                            to_deg, pitch ? &sim::TraceRow::theta : &sim::TraceRow::psi));
  p.references.push_back({pitch ? "theta_d" : "psi_d",
                          (pitch ? trace.theta_d : trace.psi_d) * to_deg, "#d62728"});
  return render_svg(p);
}

std::string voltage_plot(const Scenario& sc, const sim::SimTrace& trace) {
  PlotSpec p;
  p.title = "Motor voltages, scenario " + sc.name;
  p.x_label = "time (s)";
  p.y_label = "voltage (V)";
  p.series.push_back(column(trace, "V pitch", "#1f77b4", 1.0, &sim::TraceRow::V_pitch));
  p.series.push_back(column(trace, "V yaw", "#2ca02c", 1.0, &sim::TraceRow::V_yaw));
  const double vp = sc.runtime.v_limit_pitch;
  const double vy = sc.runtime.v_limit_yaw;
  p.references.push_back({"+/-" + sim::format_double(vp) + " V pitch limit", vp, "#d62728"});
  p.references.push_back({"", -vp, "#d62728"});
  p.references.push_back({"+/-" + sim::format_double(vy) + " V yaw limit", vy, "#ff7f0e"});
  p.references.push_back({"", -vy, "#ff7f0e"});
  return render_svg(p);
}

JobResult simulate_one(const Scenario& sc, const CommonOptions& o) {
  JobResult res;
  try {
    const sim::SimTrace trace = sim::run(sc.params, sc.gains, sc.runtime, sc.disturbance);
    const bool csv = sc.wants(Output::kTraceCsv) && o.format != ArtifactFormat::kSvg;
    const bool svg = sc.wants(Output::kPlotSvg) && o.format != ArtifactFormat::kCsv;
    std::string written;
    if (csv || svg) {
      const auto dir = scenario_dir(o, sc.name);
      if (csv) {
        write_file(dir / "trace.csv", sim::trace_csv(trace));
        written += " trace.csv";
      }
      if (svg) {
        write_file(dir / "pitch.svg", angle_plot(sc, trace, true));
        write_file(dir / "yaw.svg", angle_plot(sc, trace, false));
        write_file(dir / "voltages.svg", voltage_plot(sc, trace));
        written += " pitch.svg yaw.svg voltages.svg";
      }
      written = " ->" + written + " in " + dir.string();
    }
    const auto& last = trace.rows.back();
    res.message = "scenario " + sc.name + ": " + std::to_string(trace.rows.size()) +
                  " rows, final theta " + sim::format_double(last.theta / sim::kDegree) +
                  " deg, psi " + sim::format_double(last.psi / sim::kDegree) + " deg" + written;
  } catch (const sim::SimulationError& e) {
    res.code = kExitDiverged;
    res.message = "scenario " + sc.name + ": diverged at t = " + sim::format_double(e.time()) +
                  " s: " + e.what();
  } catch (const IoError& e) {
    res.code = kExitIo;
    res.message = "scenario " + sc.name + ": " + e.what();
  } catch (const std::exception& e) {
    res.code = kExitUsage;
    res.message = "scenario " + sc.name + ": " + e.what();
  }
  return res;
}

JobResult certify_one(const Scenario& sc, const CommonOptions& o) {
  JobResult res;
  try {
    const CertificationRun run = certify_scenario(sc);
    const auto dir = scenario_dir(o, sc.name);
    write_file(dir / "certificate.txt", format_report(run));
    res.message = "scenario " + sc.name + ": certificate " + (run.pass ? "PASS" : "FAIL") +
                  " -> " + (dir / "certificate.txt").string();
  } catch (const cert::UnstableSystemError& e) {
    res.code = kExitUnstable;
    res.message = "scenario " + sc.name + ": " + e.what();
  } catch (const cert::NotDiagonalizableError& e) {
    res.code = kExitUnstable;
    res.message = "scenario " + sc.name + ": " + e.what();
  } catch (const sim::SimulationError& e) {
    res.code = kExitDiverged;
    res.message = "scenario " + sc.name + ": diverged at t = " + sim::format_double(e.time()) +
                  " s: " + e.what();
  } catch (const IoError& e) {
    res.code = kExitIo;
    res.message = "scenario " + sc.name + ": " + e.what();
  } catch (const std::exception& e) {
    res.code = kExitUsage;
    res.message = "scenario " + sc.name + ": " + e.what();
  }
  return res;
}

template <typename Job>
int run_batch(const std::filesystem::path& config, const CommonOptions& options,
              std::ostream& out, std::ostream& err, Job job) {
  Batch batch;
  try {
    batch = load_config(config);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  }
  for (const auto& w : batch.warnings) err << "warning: " << w << '\n';
  if (options.seed) {
    for (auto& sc : batch.scenarios) sc.reseed(*options.seed);
  }

  std::vector<std::future<JobResult>> futures;
  futures.reserve(batch.scenarios.size());
  for (const auto& sc : batch.scenarios) {
    futures.push_back(std::async(std::launch::async, job, std::cref(sc), std::cref(options)));
  }
  int code = kExitOk;
  for (auto& f : futures) {
    const JobResult r = f.get();
    if (r.code == kExitOk) {
      out << r.message << '\n';
    } else {
      err << "error: " << r.message << '\n';
      if (code == kExitOk) code = r.code;
    }
  }
  return code;
}

std::string join(std::span<const double> v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) s += ", ";
    s += sim::format_double(v[i]);
  }
  return s;
}

}  // namespace

std::string design_usage() {
  return "usage: helictl design --overshoot <fraction> --settling <seconds>\n"
         "                      [--band 0.02|0.05] [--ratio <r, at least 5>]\n"
         "                      [--plant a1,a2,...] [--snippet pitch|yaw]\n";
}

int cmd_simulate(const std::filesystem::path& config, const CommonOptions& options,
                 std::ostream& out, std::ostream& err) {
  return run_batch(config, options, out, err, simulate_one);
}

int cmd_certify(const std::filesystem::path& config, const CommonOptions& options,
                std::ostream& out, std::ostream& err) {
  return run_batch(config, options, out, err, certify_one);
}

int cmd_design(const DesignOptions& o, std::ostream& out, std::ostream& err) {
  if (!o.overshoot || !o.settling) {
    err << "error: --overshoot and --settling are required\n" << design_usage();
    return kExitUsage;
  }
  try {
    design::PerfSpec spec;
    spec.overshoot_fraction = *o.overshoot;
    spec.settling_time_s = *o.settling;
    spec.settling_band = o.band;
    spec.nondominant_pole_ratio = o.ratio;
    spec.validate();

    const std::vector<double> plant_a = o.plant.empty() ? std::vector<double>{0.0, 0.0} : o.plant;
    const lti::PlantCoeffs plant(plant_a);
    if (o.snippet && *o.snippet != "pitch" && *o.snippet != "yaw") {
      err << "error: --snippet takes pitch or yaw\n" << design_usage();
      return kExitUsage;
    }
    if (o.snippet && plant.order() != 2) {
      err << "error: --snippet needs a second-order plant (three gains per axis)\n";
      return kExitUsage;
    }

    const double zeta = design::damping_from_overshoot(spec.overshoot_fraction);
    const double wn = design::natural_frequency(zeta, spec);
    const int extra = plant.order() - 1;
    const lti::CharPoly desired = design::desired_charpoly(zeta, wn, extra, spec.nondominant_pole_ratio);
    const lti::ControllerGains gains = design::gains_from_desired(plant, desired);
    const lti::CharPoly closed = lti::closed_loop_charpoly(plant, gains);

    std::vector<double> b{gains.b0};
    b.insert(b.end(), gains.b.begin(), gains.b.end());
    out << "zeta: " << sim::format_double(zeta) << '\n'
        << "omega_n_rad_per_s: " << sim::format_double(wn) << '\n'
        << "plant_ascending: " << join(plant_a) << '\n'
        << "desired_ascending: " << join(desired.coeffs()) << '\n'
        << "gains_b0_to_bn: " << join(b) << '\n'
        << "closed_loop_ascending: " << join(closed.coeffs()) << '\n'
        << "round_trip: " << (closed == desired ? "exact" : "MISMATCH") << '\n';
    if (o.snippet) {
      const int first = *o.snippet == "pitch" ? 1 : 4;
      out << "\n# " << *o.snippet << " gains for Mp = " << sim::format_double(spec.overshoot_fraction)
          << ", Ts = " << sim::format_double(spec.settling_time_s) << " s\n";
      for (int i = 0; i < 3; ++i) {
        out << 'k' << first + i << " = " << sim::format_double(b[static_cast<std::size_t>(i)]) << '\n';
      }
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitOk;
}

}  // namespace helictl::cli
