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

#include "helictl/cert_report.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "helictl/sim_runtime.h"
#include "helictl/trace_io.h"

namespace helictl::cli {
namespace {

constexpr double kNoLimit = 1e12;

// 53-bit uniform in [0, 1); std distributions differ between libraries.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double gaussian(std::mt19937_64& rng) {
  const double u1 = 1.0 - uniform01(rng);  // (0, 1]
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::string num(double v) { return sim::format_double(v); }

std::string verdict(bool ok) { return ok ? "PASS" : "FAIL"; }

std::string complex_text(std::complex<double> z) {
  return num(z.real()) + (std::signbit(z.imag()) ? " - " : " + ") + num(std::abs(z.imag())) + "i";
}

}  // namespace

sim::RuntimeConfig certification_runtime(const Scenario& s, const heli::StateZ& z0) {
  sim::RuntimeConfig r;
  r.dt = s.cert.dt;
  r.t_end = s.cert.horizon_s;
  r.theta_d = s.runtime.theta_d;
  r.psi_d = s.runtime.psi_d;
  r.z1_0 = z0(0);
  r.z2_0 = z0(1);
  r.theta0 = s.runtime.theta_d + z0(2);
  r.psi0 = s.runtime.psi_d + z0(3);
  r.theta_dot0 = z0(4);
  r.psi_dot0 = z0(5);
  r.model = sim::PlantModel::kSmallAngle;
  r.psi_coupling = heli::PsiCoupling::kSolved;
  r.controller = sim::ControllerMode::kContinuous;
  r.gain_convention = s.runtime.gain_convention;
  r.gravity_bias = true;
  r.quantize = false;
  r.travel_limits = false;
  r.v_limit_pitch = kNoLimit;
  r.v_limit_yaw = kNoLimit;
  r.forced_saturation_until = 0.0;
  r.antiwindup_reset_s = std::numeric_limits<double>::infinity();
  r.map_pitch = s.runtime.map_pitch;
  r.map_yaw = s.runtime.map_yaw;
  r.record_stride = 1;
  return r;
}

std::vector<heli::StateZ> sample_initial_states(const cert::Certificate& c,
                                                const CertSettings& settings) {
  std::mt19937_64 rng(settings.seed);
  std::vector<heli::StateZ> out;
  out.reserve(static_cast<std::size_t>(std::max(0, settings.trajectories)));
  for (int i = 0; i < settings.trajectories; ++i) {
    heli::StateZ dir;
    do {
      for (int j = 0; j < 6; ++j) dir(j) = gaussian(rng);
    } while (dir.norm() == 0.0);
    dir.normalize();
    const double radius = settings.z0_fraction * c.z0_max * (1.0 - uniform01(rng));
    out.push_back(radius * dir);
  }
  return out;
}

heli::StateZ scenario_initial_state(const Scenario& s) {
  heli::StateZ z;
  z << s.runtime.z1_0, s.runtime.z2_0, s.runtime.theta0 - s.runtime.theta_d,
      s.runtime.psi0 - s.runtime.psi_d, s.runtime.theta_dot0, s.runtime.psi_dot0;
  return z;
}

TrajectoryConvergence check_convergence(const cert::Certificate& c,
                                        const sim::SimTrace& trace, double horizon) {
  cert::ConvergenceOptions opt;
  opt.t0 = kConvergenceLag;
  opt.horizon = horizon;
  opt.tolerance = kConvergenceTolerance;
  opt.lambda_max = c.lambda1;
  TrajectoryConvergence out;
  out.report = cert::verify_convergence(trace, opt);
  out.d_at_40 = cert::difference_at(
      out.report, std::min(kConvergenceCheckTime, horizon - kConvergenceLag));
  const double target = std::abs(c.lambda1);
  out.rate_ok = std::isfinite(out.report.fitted_rate) &&
                std::abs(out.report.fitted_rate - target) <= kRateTolerance * target;
  out.pass = out.report.pass && out.d_at_40 < kConvergenceTolerance && out.rate_ok;
  return out;
}

CertificationRun certify_scenario(const Scenario& s) {
  CertificationRun run;
  run.scenario = s.name;
  run.gains = s.gains.name;
  run.convention = s.runtime.gain_convention;
  run.theta_d = s.runtime.theta_d;
  run.psi_d = s.runtime.psi_d;
  const heli::Matrix6d A =
      heli::refined_linear_A(s.params, s.gains, s.runtime.theta_d, s.runtime.gain_convention);
  run.certificate = cert::build_certificate(A, s.params, s.runtime.theta_d);
  const cert::Certificate& c = run.certificate;

  run.scenario_z0_norm = scenario_initial_state(s).norm();
  run.scenario_gamma = c.gamma_for(run.scenario_z0_norm);

  run.initial_states = sample_initial_states(c, s.cert);
  std::vector<cert::BoundednessEntry> entries;
  for (const heli::StateZ& z0 : run.initial_states) {
    const sim::SimTrace trace =
        sim::run(s.params, s.gains, certification_runtime(s, z0), sim::no_disturbance());
    entries.push_back(cert::check_boundedness(c, trace));
    run.convergence.push_back(check_convergence(c, trace, s.cert.horizon_s));
    if (!run.convergence.back().pass) ++run.convergence_failures;
  }
  run.boundedness = cert::summarize_boundedness(std::move(entries));

  const sim::SimTrace rest = sim::run(s.params, s.gains,
                                      certification_runtime(s, heli::StateZ::Zero()),
                                      sim::no_disturbance());
  run.trivial = cert::check_boundedness(c, rest);

  const bool sampled = !run.initial_states.empty();
  run.pass = run.trivial.pass && run.convergence_failures == 0 &&
             (!sampled || run.boundedness.pass) && c.bound_residual() <= 1e-12 * std::max(1.0, c.gamma);
  return run;
}

std::string format_report(const CertificationRun& r) {
  const cert::Certificate& c = r.certificate;
  std::string o;
  auto kv = [&o](const std::string& key, const std::string& value) {
    o += key + ": " + value + "\n";
  };
  kv("report", "helictl stability certificate");
  kv("scenario", r.scenario);
  kv("gains", r.gains);
  kv("gain_convention", r.convention == heli::GainConvention::kTorque ? "torque" : "prescaled");
  kv("theta_d_rad", num(r.theta_d));
  kv("psi_d_rad", num(r.psi_d));
  kv("eigenvalue_count", std::to_string(c.eigenvalues.size()));
  for (Eigen::Index i = 0; i < c.eigenvalues.size(); ++i) {
    kv("eigenvalue_" + std::to_string(i + 1), complex_text(c.eigenvalues(i)));
  }
  kv("beta", num(c.beta));
  kv("kappa", num(c.kappa));
  kv("lambda1_real", num(c.lambda1));
  kv("z0_max", num(c.z0_max));
  kv("gamma", num(c.gamma));
  kv("gamma_residual", num(c.bound_residual()));
  kv("scenario_z0_norm", num(r.scenario_z0_norm));
  kv("scenario_gamma", r.scenario_gamma ? num(*r.scenario_gamma)
                                        : "infeasible (scenario_z0_norm exceeds z0_max)");
  kv("trajectories", std::to_string(r.initial_states.size()));
  kv("rejected", std::to_string(r.boundedness.rejected));
  kv("boundedness", r.initial_states.empty() ? "SKIPPED" : verdict(r.boundedness.pass));
  kv("boundedness_failures", std::to_string(r.boundedness.failures));
  kv("boundedness_worst_margin",
     r.initial_states.empty() ? "n/a" : num(r.boundedness.worst_margin));
  kv("convergence", r.initial_states.empty() ? "SKIPPED" : verdict(r.convergence_failures == 0));
  kv("convergence_failures", std::to_string(r.convergence_failures));
  double rmin = std::numeric_limits<double>::infinity();
  double rmax = -rmin;
  double dmax = 0.0;
  for (const auto& t : r.convergence) {
    rmin = std::min(rmin, t.report.fitted_rate);
    rmax = std::max(rmax, t.report.fitted_rate);
    dmax = std::max(dmax, t.d_at_40);
  }
  kv("convergence_rate_min", r.convergence.empty() ? "n/a" : num(rmin));
  kv("convergence_rate_max", r.convergence.empty() ? "n/a" : num(rmax));
  kv("convergence_d40_max", r.convergence.empty() ? "n/a" : num(dmax));
  kv("trivially_bounded", verdict(r.trivial.pass));
  kv("result", verdict(r.pass));

  o += "\n[boundedness]\n# index z0_norm max_norm gamma verdict\n";
  for (std::size_t i = 0; i < r.boundedness.entries.size(); ++i) {
    const auto& e = r.boundedness.entries[i];
    o += std::to_string(i) + " " + num(e.z0_norm) + " " + num(e.max_norm) + " " + num(e.gamma) +
         " " + (e.rejected ? "REJECTED" : verdict(e.pass)) + "\n";
  }
  o += "\n[convergence]\n# index d_0 d_40 d_final fitted_rate monotone_from verdict\n";
  for (std::size_t i = 0; i < r.convergence.size(); ++i) {
    const auto& t = r.convergence[i];
    o += std::to_string(i) + " " + num(t.report.d.front()) + " " + num(t.d_at_40) + " " +
         num(t.report.d_final) + " " + num(t.report.fitted_rate) + " " +
         std::to_string(t.report.monotone_from) + " " + verdict(t.pass) + "\n";
  }
  o += "\n[trivial]\n# zero initial norm\nz0_norm: " + num(r.trivial.z0_norm) +
       "\nmax_norm: " + num(r.trivial.max_norm) + "\nverdict: " + verdict(r.trivial.pass) + "\n";
  return o;
}

}  // namespace helictl::cli
