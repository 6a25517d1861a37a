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

#include "helictl/heli_dynamics.h"

#include <cmath>
#include <string>

namespace helictl::heli {
namespace {

void require_finite(const HeliState& s, const Torques& u) {
  if (!std::isfinite(s.theta) || !std::isfinite(s.psi) ||
      !std::isfinite(s.theta_dot) || !std::isfinite(s.psi_dot) ||
      !std::isfinite(u.theta) || !std::isfinite(u.psi)) {
    throw std::invalid_argument("non-finite state or torque");
  }
}

}  // namespace

void HeliParams::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument(std::string(name) + " must be positive");
    }
  };
  auto non_negative = [](double v, const char* name) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument(std::string(name) + " must be non-negative");
    }
  };
  positive(Jp, "Jp");
  positive(Jy, "Jy");
  positive(m, "m");
  positive(l, "l");
  non_negative(Bp, "Bp");
  non_negative(By, "By");
  positive(g, "g");
  if (!std::isfinite(alpha1()) || !std::isfinite(alpha2())) {
    throw std::invalid_argument("alpha1/alpha2 not finite");
  }
}

HeliParams plausible_rig_params() {
  return HeliParams{.Jp = 0.0384,
                    .Jy = 0.0432,
                    .m = 1.3872,
                    .l = 0.186,
                    .Bp = 0.800,
                    .By = 0.318,
                    .g = 9.81};
}

Accelerations full_accelerations(const HeliParams& p, const HeliState& s,
                                 const Torques& u) {
  require_finite(s, u);
  const double c = std::cos(s.theta);
  const double sn = std::sin(s.theta);
  const double ml2 = p.ml2();
  Accelerations a;
  a.theta_ddot = (u.theta - p.Bp * s.theta_dot - p.mgl() * c -
                  ml2 * c * sn * s.psi_dot * s.psi_dot) /
                 (p.Jp + ml2);
  a.psi_ddot = (u.psi - p.By * s.psi_dot +
                2.0 * ml2 * c * sn * s.theta_dot * s.psi_dot) /
               (p.Jy + ml2 * c * c);
  return a;
}

Accelerations small_angle_accelerations(const HeliParams& p, const HeliState& s,
                                        const Torques& u, PsiCoupling coupling) {
  require_finite(s, u);
  const double th2 = s.theta * s.theta;
  const double pd2 = s.psi_dot * s.psi_dot;
  const double ml2 = p.ml2();
  const double mgl = p.mgl();
  Accelerations a;
  a.theta_ddot = p.alpha1() * (u.theta - p.Bp * s.theta_dot - mgl +
                               mgl * th2 / 2.0 - ml2 * pd2 + ml2 * th2 * pd2 / 2.0);
  const double yaw_rhs = u.psi - p.By * s.psi_dot +
                         2.0 * ml2 * (1.0 - th2 / 2.0) * s.theta_dot * s.psi_dot;
  if (coupling == PsiCoupling::kNeglected) {
    a.psi_ddot = p.alpha2() * yaw_rhs;
  } else {
    const double den = p.Jy + ml2 - ml2 * th2;
    if (!(den > 0.0)) {
      throw SingularModelError("small-angle yaw inertia Jy + m·l²(1 − θ²) <= 0");
    }
    a.psi_ddot = yaw_rhs / den;
  }
  return a;
}

Accelerations refined_linear_accelerations(const HeliParams& p,
                                           const HeliState& s, const Torques& u,
                                           double theta_d, bool include_residual) {
  require_finite(s, u);
  const double z3 = s.theta - theta_d;
  const double mgl = p.mgl();
  Accelerations a;
  a.theta_ddot = p.alpha1() * (u.theta - p.Bp * s.theta_dot - mgl +
                               mgl * theta_d * theta_d / 2.0 + mgl * theta_d * z3);
  a.psi_ddot = p.alpha2() * (u.psi - p.By * s.psi_dot);
  if (include_residual) {
    StateZ z;
    z << 0.0, 0.0, z3, 0.0, s.theta_dot, s.psi_dot;
    const StateZ n = residual_N(p, z, theta_d);
    a.theta_ddot += n(4);
    a.psi_ddot += n(5);
  }
  return a;
}

std::array<double, 6> torque_gains(const design::GainPreset& gains,
                                   const HeliParams& p, GainConvention convention) {
  std::array<double, 6> k{};
  for (int i = 0; i < 6; ++i) k[static_cast<std::size_t>(i)] = gains.k(i + 1);
  if (convention == GainConvention::kPrescaled) {
    for (int i = 0; i < 3; ++i) k[static_cast<std::size_t>(i)] /= p.alpha1();
    for (int i = 3; i < 6; ++i) k[static_cast<std::size_t>(i)] /= p.alpha2();
  }
  return k;
}

Matrix6d refined_linear_A(const HeliParams& p, const design::GainPreset& gains,
                          double theta_d, GainConvention convention) {
  const double a1 = p.alpha1();
  const double a2 = p.alpha2();
  // Gain entries as they appear in the matrix.
  const double s1 = convention == GainConvention::kTorque ? a1 : 1.0;
  const double s2 = convention == GainConvention::kTorque ? a2 : 1.0;

  Matrix6d A = Matrix6d::Zero();
  A(0, 2) = 1.0;
  A(1, 3) = 1.0;
  A(2, 4) = 1.0;
  A(3, 5) = 1.0;

  A(4, 0) = -s1 * gains.k(1);
  A(4, 2) = -s1 * gains.k(2) + a1 * p.mgl() * theta_d;
  A(4, 4) = -s1 * gains.k(3) - a1 * p.Bp;

  A(5, 1) = -s2 * gains.k(4);
  A(5, 3) = -s2 * gains.k(5);
  A(5, 5) = -s2 * gains.k(6) - a2 * p.By;
  return A;
}

StateZ residual_N(const HeliParams& p, const StateZ& z, double theta_d) {
  const double a1 = p.alpha1();
  const double a2 = p.alpha2();
  const double mgl = p.mgl();
  const double ml2 = p.ml2();
  const double td = theta_d;
  const double z3 = z(2);
  const double z5 = z(4);
  const double z6 = z(5);

  StateZ n = StateZ::Zero();
  n(4) = a1 * mgl * z3 * z3 / 2.0 - a1 * ml2 * z6 * z6 +
         a1 * ml2 * td * td * z6 * z6 + 2.0 * a1 * ml2 * td * z3 * z6 +
         a1 * ml2 * z3 * z3 * z6 * z6;
  n(5) = a2 * ml2 * (2.0 + td * td) * z5 * z6 + 2.0 * a2 * ml2 * td * z3 * z5 * z6 +
         a2 * ml2 * z3 * z3 * z5 * z6;
  return n;
}

ConstantBias constant_bias(const HeliParams& p, double theta_d) {
  ConstantBias b;
  const double mgl = p.mgl();
  b.vector(4) = -p.alpha1() * mgl + p.alpha1() * mgl * theta_d * theta_d / 2.0;
  b.feedforward_torque = mgl * (1.0 - theta_d * theta_d / 2.0);
  return b;
}

double total_energy(const HeliParams& p, const HeliState& s) {
  const double lt = p.l * s.theta_dot;
  const double lp = p.l * std::cos(s.theta) * s.psi_dot;
  return p.mgl() * std::sin(s.theta) + 0.5 * p.Jp * s.theta_dot * s.theta_dot +
         0.5 * p.Jy * s.psi_dot * s.psi_dot + 0.5 * p.m * (lt * lt + lp * lp);
}

StateZ closed_loop_z_derivative(const HeliParams& p,
                                const design::GainPreset& gains, double theta_d,
                                const StateZ& z, GainConvention convention,
                                PsiCoupling coupling) {
  const auto k = torque_gains(gains, p, convention);
  const double bias = constant_bias(p, theta_d).feedforward_torque;
  const Torques u{bias - k[0] * z(0) - k[1] * z(2) - k[2] * z(4),
                  -k[3] * z(1) - k[4] * z(3) - k[5] * z(5)};
  const HeliState s{theta_d + z(2), 0.0, z(4), z(5)};
  const Accelerations a = small_angle_accelerations(p, s, u, coupling);
  StateZ dz;
  dz << z(2), z(3), z(4), z(5), a.theta_ddot, a.psi_ddot;
  return dz;
}

}  // namespace helictl::heli
