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

#include "helictl/sim_runtime.h"

#include <cmath>
#include <optional>
#include <sstream>

#include <Eigen/Core>

namespace helictl::sim {
namespace {

using PlantVector = Eigen::Matrix<double, 6, 1>;  // θ, ψ, θ̇, ψ̇, ∫y_θ, ∫y_ψ

template <typename Vector, typename Rhs>
Vector rk4_step(const Vector& x, double t, double h, Rhs&& f) {
  const Vector k1 = f(x, t);
  const Vector k2 = f((x + 0.5 * h * k1).eval(), t + 0.5 * h);
  const Vector k3 = f((x + 0.5 * h * k2).eval(), t + 0.5 * h);
  const Vector k4 = f((x + h * k3).eval(), t + h);
  return x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

template <typename Vector>
bool diverged(const Vector& x) {
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x(i)) || std::abs(x(i)) > kDivergenceLimit) return true;
  }
  return false;
}

std::string at_time(const char* what, double t) {
  std::ostringstream s;
  s << what << " at t = " << t << " s";
  return s.str();
}

heli::Accelerations plant_accelerations(const heli::HeliParams& p,
                                        const RuntimeConfig& cfg,
                                        PlantModel model,
                                        const heli::HeliState& s,
                                        const heli::Torques& u) {
  switch (model) {
    case PlantModel::kFull:
      return heli::full_accelerations(p, s, u);
    case PlantModel::kSmallAngle:
      return heli::small_angle_accelerations(p, s, u, cfg.psi_coupling);
    case PlantModel::kRefinedLinear:
      return heli::refined_linear_accelerations(p, s, u, cfg.theta_d,
                                                cfg.include_residual);
  }
  return {};
}

heli::HeliState state_of(const PlantVector& x) {
  return {x(0), x(1), x(2), x(3)};
}

// Pitch or yaw PID with the torque-domain gains applied as T = bias − k·z.
struct AxisLaw {
  double k_int = 0.0;
  double k_prop = 0.0;
  double k_rate = 0.0;
  double bias = 0.0;
  TorqueVoltageMap map;

  double command(double z_int, double error, double rate) const {
    return bias - k_int * z_int - k_prop * error - k_rate * rate;
  }
  // Saturation discrepancy expressed in integrator-state units.
  double to_integrator_units(double torque) const {
    return k_int != 0.0 ? torque / k_int : 0.0;
  }
};

class ClosedLoop {
 public:
  ClosedLoop(const heli::HeliParams& p, const design::GainPreset& gains,
             const RuntimeConfig& cfg)
      : p_(p), cfg_(cfg) {
    const auto k = heli::torque_gains(gains, p, cfg.gain_convention);
    pitch_ = {k[0], k[1], k[2],
              cfg.gravity_bias ? heli::constant_bias(p, cfg.theta_d).feedforward_torque : 0.0,
              cfg.map_pitch};
    yaw_ = {k[3], k[4], k[5], 0.0, cfg.map_yaw};
  }

  double v_limit_pitch(double t) const {
    return t < cfg_.forced_saturation_until ? cfg_.forced_v_limit_pitch : cfg_.v_limit_pitch;
  }
  double v_limit_yaw(double t) const {
    return t < cfg_.forced_saturation_until ? cfg_.forced_v_limit_yaw : cfg_.v_limit_yaw;
  }

  struct Actuation {
    SaturationResult pitch;
    SaturationResult yaw;
    double back_calc_pitch = 0.0;  // integrator-units discrepancy / Tt
    double back_calc_yaw = 0.0;
  };

  // Ideal law on the true state; used by the continuous controller.
  Actuation ideal_actuation(const PlantVector& x, double t) const {
    const double z1 = -x(4);
    const double z2 = -x(5);
    const double tc_p = pitch_.command(z1, x(0) - cfg_.theta_d, x(2));
    const double tc_y = yaw_.command(z2, x(1) - cfg_.psi_d, x(3));
    Actuation a;
    a.pitch = apply_saturation(tc_p, pitch_.map, v_limit_pitch(t));
    a.yaw = apply_saturation(tc_y, yaw_.map, v_limit_yaw(t));
    if (std::isfinite(cfg_.antiwindup_reset_s)) {
      a.back_calc_pitch = pitch_.to_integrator_units(a.pitch.torque_effective - tc_p) /
                          cfg_.antiwindup_reset_s;
      a.back_calc_yaw = yaw_.to_integrator_units(a.yaw.torque_effective - tc_y) /
                        cfg_.antiwindup_reset_s;
    }
    return a;
  }

  PlantVector derivative(const PlantVector& x, double t,
                         const heli::Torques& applied, const heli::Torques& dist,
                         bool continuous) const {
    heli::Torques u = applied;
    PlantVector dx = PlantVector::Zero();
    if (continuous) {
      const Actuation a = ideal_actuation(x, t);
      u = {a.pitch.torque_effective, a.yaw.torque_effective};
      dx(4) = (cfg_.theta_d - x(0)) + a.back_calc_pitch;
      dx(5) = (cfg_.psi_d - x(1)) + a.back_calc_yaw;
    }
    u.theta += dist.theta;
    u.psi += dist.psi;
    const heli::Accelerations acc =
        plant_accelerations(p_, cfg_, cfg_.model, state_of(x), u);
    dx(0) = x(2);
    dx(1) = x(3);
    dx(2) = acc.theta_ddot;
    dx(3) = acc.psi_ddot;
    return dx;
  }

  const AxisLaw& pitch() const { return pitch_; }
  const AxisLaw& yaw() const { return yaw_; }

 private:
  const heli::HeliParams& p_;
  const RuntimeConfig& cfg_;
  AxisLaw pitch_;
  AxisLaw yaw_;
};

}  // namespace

void RuntimeConfig::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument(std::string(name) + " must be positive");
    }
  };
  positive(dt, "dt");
  if (!(t_end > dt) || !std::isfinite(t_end)) {
    throw std::invalid_argument("t_end must exceed dt");
  }
  positive(v_limit_pitch, "v_limit_pitch");
  positive(v_limit_yaw, "v_limit_yaw");
  positive(forced_v_limit_pitch, "forced_v_limit_pitch");
  positive(forced_v_limit_yaw, "forced_v_limit_yaw");
  positive(enc_res_pitch, "enc_res_pitch");
  positive(enc_res_yaw, "enc_res_yaw");
  positive(filter_zeta, "filter_zeta");
  positive(filter_wc, "filter_wc");
  if (!(antiwindup_reset_s > 0.0)) {
    throw std::invalid_argument("antiwindup_reset_s must be positive (inf disables)");
  }
  if (map_pitch.gain == 0.0 || map_yaw.gain == 0.0) {
    throw std::invalid_argument("torque-to-voltage gain must be non-zero");
  }
  if (record_stride < 1) throw std::invalid_argument("record_stride must be >= 1");
  if (ctrl_dt < 0.0) throw std::invalid_argument("ctrl_dt must be >= 0");
  if (ctrl_dt > 0.0) {
    const double ratio = ctrl_dt / dt;
    if (std::abs(ratio - std::round(ratio)) > 1e-9 * ratio || std::round(ratio) < 1.0) {
      throw std::invalid_argument("ctrl_dt must be a positive multiple of dt");
    }
  }
  if (travel_limits) {
    const double half_pi = std::numbers::pi / 2.0;
    if (!(theta_min < theta_max) || !(theta_min > -half_pi) || !(theta_max < half_pi)) {
      throw std::invalid_argument("travel limits must satisfy -pi/2 < min < max < pi/2");
    }
  }
  for (double v : {theta_d, psi_d, theta0, psi0, theta_dot0, psi_dot0, z1_0, z2_0}) {
    if (!std::isfinite(v)) throw std::invalid_argument("initial conditions must be finite");
  }
  if (controller == ControllerMode::kSampled) {
    // Throws when the filter would be under-sampled.
    FilteredDerivative probe(filter_zeta, filter_wc, dt * static_cast<double>(ctrl_steps()));
  }
}

long RuntimeConfig::step_count() const { return std::lround(t_end / dt); }

long RuntimeConfig::ctrl_steps() const {
  return ctrl_dt > 0.0 ? std::lround(ctrl_dt / dt) : 1;
}

RigProfile plausible_rig() {
  RigProfile r;
  r.params = heli::plausible_rig_params();
  // Thrust constants of roughly 0.204 N·m/V (pitch) and 0.072 N·m/V (yaw).
  r.map_pitch = {1.0 / 0.204, 0.0};
  r.map_yaw = {1.0 / 0.072, 0.0};
  return r;
}

SimTrace run(const heli::HeliParams& params, const design::GainPreset& gains,
             const RuntimeConfig& cfg, const DisturbanceSignal& dist) {
  params.validate();
  gains.validate();
  cfg.validate();
  dist.validate();

  const bool continuous = cfg.controller == ControllerMode::kContinuous;
  const ClosedLoop loop(params, gains, cfg);
  const long n_steps = cfg.step_count();
  const long ctrl_every = cfg.ctrl_steps();
  const double ctrl_period = cfg.dt * static_cast<double>(ctrl_every);

  PlantVector x;
  x << cfg.theta0, cfg.psi0, cfg.theta_dot0, cfg.psi_dot0, -cfg.z1_0, -cfg.z2_0;

  std::optional<FilteredDerivative> rate_pitch;
  std::optional<FilteredDerivative> rate_yaw;
  if (!continuous) {
    rate_pitch.emplace(cfg.filter_zeta, cfg.filter_wc, ctrl_period);
    rate_yaw.emplace(cfg.filter_zeta, cfg.filter_wc, ctrl_period);
  }
  // Integrators hold ∫y = −z.
  AntiWindupIntegrator int_pitch(cfg.antiwindup_reset_s, -cfg.z1_0);
  AntiWindupIntegrator int_yaw(cfg.antiwindup_reset_s, -cfg.z2_0);

  auto measure = [&](double angle, double res) {
    return cfg.quantize && !continuous ? quantize_encoder(angle, res) : angle;
  };
  if (!continuous) {
    rate_pitch->reset(measure(x(0), cfg.enc_res_pitch));
    rate_yaw->reset(measure(x(1), cfg.enc_res_yaw));
  }

  SimTrace trace;
  trace.row_dt = cfg.dt * cfg.record_stride;
  trace.theta_d = cfg.theta_d;
  trace.psi_d = cfg.psi_d;
  trace.rows.reserve(static_cast<std::size_t>(n_steps / cfg.record_stride + 1));

  auto at_stop = [&](double theta) {
    return cfg.travel_limits && (theta <= cfg.theta_min || theta >= cfg.theta_max);
  };
  bool in_contact = at_stop(x(0));

  heli::Torques held{};
  SaturationResult sat_pitch{};
  SaturationResult sat_yaw{};
  double theta_meas = x(0);
  double psi_meas = x(1);

  for (long k = 0;; ++k) {
    const double t = static_cast<double>(k) * cfg.dt;
    const heli::Torques d = dist.value_at(t, cfg.dt);
    double z1 = -int_pitch.state();
    double z2 = -int_yaw.state();

    if (continuous) {
      const auto a = loop.ideal_actuation(x, t);
      sat_pitch = a.pitch;
      sat_yaw = a.yaw;
      held = {a.pitch.torque_effective, a.yaw.torque_effective};
      theta_meas = x(0);
      psi_meas = x(1);
      z1 = -x(4);
      z2 = -x(5);
    } else if (k % ctrl_every == 0) {
      theta_meas = measure(x(0), cfg.enc_res_pitch);
      psi_meas = measure(x(1), cfg.enc_res_yaw);
      const double rate_p = rate_pitch->step(theta_meas);
      const double rate_y = rate_yaw->step(psi_meas);
      const AxisLaw& lp = loop.pitch();
      const AxisLaw& ly = loop.yaw();
      const double tc_p = lp.command(z1, theta_meas - cfg.theta_d, rate_p);
      const double tc_y = ly.command(z2, psi_meas - cfg.psi_d, rate_y);
      sat_pitch = apply_saturation(tc_p, lp.map, loop.v_limit_pitch(t));
      sat_yaw = apply_saturation(tc_y, ly.map, loop.v_limit_yaw(t));
      held = {sat_pitch.torque_effective, sat_yaw.torque_effective};
      int_pitch.step(cfg.theta_d - theta_meas, lp.to_integrator_units(tc_p),
                     lp.to_integrator_units(sat_pitch.torque_effective), ctrl_period);
      int_yaw.step(cfg.psi_d - psi_meas, ly.to_integrator_units(tc_y),
                   ly.to_integrator_units(sat_yaw.torque_effective), ctrl_period);
    }

    if (k % cfg.record_stride == 0) {
      TraceRow row;
      row.t = t;
      row.theta = x(0);
      row.psi = x(1);
      row.theta_dot = x(2);
      row.psi_dot = x(3);
      row.theta_meas = theta_meas;
      row.psi_meas = psi_meas;
      row.z << z1, z2, x(0) - cfg.theta_d, x(1) - cfg.psi_d, x(2), x(3);
      row.T_theta = held.theta;
      row.T_psi = held.psi;
      row.V_pitch = sat_pitch.voltage;
      row.V_yaw = sat_yaw.voltage;
      row.d_theta = d.theta;
      row.d_psi = d.psi;
      row.E = heli::total_energy(params, state_of(x));
      trace.rows.push_back(row);
    }
    if (k == n_steps) break;

    try {
      x = rk4_step(x, t, cfg.dt, [&](const PlantVector& xs, double ts) {
        return loop.derivative(xs, ts, held, d, continuous);
      });
    } catch (const heli::SingularModelError& e) {
      throw SimulationError(at_time(e.what(), t), t);
    }
    const double t_next = t + cfg.dt;
    if (diverged(x)) throw SimulationError(at_time("simulation diverged", t_next), t_next);

    if (cfg.travel_limits) {
      const bool hit_low = x(0) <= cfg.theta_min;
      const bool hit_high = x(0) >= cfg.theta_max;
      if (hit_low) {
        x(0) = cfg.theta_min;
        if (x(2) < 0.0) x(2) = 0.0;
      } else if (hit_high) {
        x(0) = cfg.theta_max;
        if (x(2) > 0.0) x(2) = 0.0;
      }
      const bool contact = hit_low || hit_high;
      if (contact && !in_contact) {
        ++trace.clamp_events;
        if (trace.first_clamp_t < 0.0) trace.first_clamp_t = t_next;
      }
      in_contact = contact;
    }
  }
  return trace;
}

std::vector<heli::HeliState> integrate_open_loop(const heli::HeliParams& params,
                                                 const heli::HeliState& initial,
                                                 const heli::Torques& torques,
                                                 PlantModel model, double dt,
                                                 long steps) {
  params.validate();
  if (!(dt > 0.0) || steps < 0) throw std::invalid_argument("bad step size or count");
  RuntimeConfig cfg;  // only model options and θ_d = 0 are read
  cfg.model = model;
  using V4 = Eigen::Vector4d;
  V4 x(initial.theta, initial.psi, initial.theta_dot, initial.psi_dot);
  std::vector<heli::HeliState> out;
  out.reserve(static_cast<std::size_t>(steps) + 1);
  out.push_back(initial);
  auto f = [&](const V4& xs, double) {
    const auto a = plant_accelerations(params, cfg, model, {xs(0), xs(1), xs(2), xs(3)}, torques);
    return V4(xs(2), xs(3), a.theta_ddot, a.psi_ddot);
  };
  for (long k = 0; k < steps; ++k) {
    x = rk4_step(x, static_cast<double>(k) * dt, dt, f);
    if (diverged(x)) {
      const double t = static_cast<double>(k + 1) * dt;
      throw SimulationError(at_time("open-loop integration diverged", t), t);
    }
    out.push_back({x(0), x(1), x(2), x(3)});
  }
  return out;
}

LtiTrace simulate_lti_loop(const lti::PlantCoeffs& plant,
                           const lti::ControllerGains& gains, double x_d,
                           const std::function<double(double)>& disturbance,
                           double dt, double t_end) {
  if (gains.order() != plant.order()) {
    throw lti::DimensionMismatch("plant and gains differ in order");
  }
  if (!(dt > 0.0) || !(t_end > dt)) throw std::invalid_argument("bad dt or t_end");
  const int n = plant.order();
  // x, x', …, x⁽ⁿ⁻¹⁾, then ∫y.
  Eigen::VectorXd s = Eigen::VectorXd::Zero(n + 1);
  const long steps = std::lround(t_end / dt);

  LtiTrace out;
  out.t.reserve(static_cast<std::size_t>(steps) + 1);
  out.x.reserve(static_cast<std::size_t>(steps) + 1);
  out.t.push_back(0.0);
  out.x.push_back(0.0);

  for (long k = 0; k < steps; ++k) {
    const double t = static_cast<double>(k) * dt;
    const double d = disturbance ? disturbance(t) : 0.0;
    auto f = [&](const Eigen::VectorXd& v, double) {
      Eigen::VectorXd dv(n + 1);
      double u = gains.b0 * v(n) + gains.b[0] * (x_d - v(0));
      for (int i = 2; i <= n; ++i) u -= gains.b[static_cast<std::size_t>(i - 1)] * v(i - 1);
      double highest = u + d;
      for (int i = 1; i <= n; ++i) highest -= plant.a(i) * v(i - 1);
      for (int i = 0; i + 1 < n; ++i) dv(i) = v(i + 1);
      dv(n - 1) = highest;
      dv(n) = x_d - v(0);
      return dv;
    };
    s = rk4_step(s, t, dt, f);
    const double t_next = static_cast<double>(k + 1) * dt;
    if (diverged(s)) throw SimulationError(at_time("LTI loop diverged", t_next), t_next);
    out.t.push_back(t_next);
    out.x.push_back(s(0));
  }
  return out;
}

}  // namespace helictl::sim
