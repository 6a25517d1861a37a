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
/// Two-degree-of-freedom helicopter: pitch θ and yaw ψ about a fixed base,
/// centre of mass a distance l from the pitch hinge. Three levels of model
/// are provided: the full Euler–Lagrange equations, the small-angle model
/// (trigonometric terms truncated after second order), and the refined
/// linear state space in error coordinates with its nonlinear residual.
///
/// Sign convention: positive T_θ raises the nose; gravity pulls it down with
/// torque m·g·l·cos θ.

#include <array>
#include <stdexcept>

#include <Eigen/Core>

#include "helictl/gain_design.h"

namespace helictl::heli {

struct HeliParams {
  double Jp = 0.0;   // kg·m², pitch body inertia
  double Jy = 0.0;   // kg·m², yaw body inertia
  double m = 0.0;    // kg, moving mass
  double l = 0.0;    // m, hinge to centre of mass
  double Bp = 0.0;   // N·m·s/rad
  double By = 0.0;   // N·m·s/rad
  double g = 9.81;   // m/s²

  void validate() const;

  double mgl() const { return m * g * l; }
  double ml2() const { return m * l * l; }
  /// 1 / (Jp + m·l²)
  double alpha1() const { return 1.0 / (Jp + ml2()); }
  /// 1 / (Jy + m·l²)
  double alpha2() const { return 1.0 / (Jy + ml2()); }
};

/// A documented, physically plausible bench-top rig. These numbers are NOT
/// taken from any published experiment; they resemble a commercial
/// two-rotor teaching rig and exist so that examples run out of the box.
HeliParams plausible_rig_params();

struct HeliState {
  double theta = 0.0;      // rad
  double psi = 0.0;        // rad
  double theta_dot = 0.0;  // rad/s
  double psi_dot = 0.0;    // rad/s
};

struct Torques {
  double theta = 0.0;  // N·m
  double psi = 0.0;    // N·m
};

struct Accelerations {
  double theta_ddot = 0.0;  // rad/s²
  double psi_ddot = 0.0;    // rad/s²
};

/// z₁ = ∫(θ−θ_d), z₂ = ∫(ψ−ψ_d), z₃ = θ−θ_d, z₄ = ψ−ψ_d, z₅ = θ̇, z₆ = ψ̇.
using StateZ = Eigen::Matrix<double, 6, 1>;
using Matrix6d = Eigen::Matrix<double, 6, 6>;

/// How the m·l²·θ²·ψ̈ term of the small-angle yaw equation is treated.
enum class PsiCoupling {
  kSolved,     // moved to the left-hand side, denominator Jy + m·l²(1 − θ²)
  kNeglected,  // dropped, as in the refined linear part
};

/// How the six gains relate to torque. kTorque: T = −k·z, so the state
/// matrix carries −α·k. kPrescaled: the gains already include α, so the
/// state matrix carries −k and the applied torque is −(k/α)·z.
enum class GainConvention { kTorque, kPrescaled };

class SingularModelError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

Accelerations full_accelerations(const HeliParams& p, const HeliState& s,
                                 const Torques& u);

Accelerations small_angle_accelerations(const HeliParams& p, const HeliState& s,
                                        const Torques& u,
                                        PsiCoupling coupling = PsiCoupling::kSolved);

/// Plant behind the refined linear state space: the linear part about θ_d,
/// the constant gravity term, and optionally the residual N.
Accelerations refined_linear_accelerations(const HeliParams& p,
                                           const HeliState& s, const Torques& u,
                                           double theta_d, bool include_residual);

/// Gains as torque gains (T = −k·z), whatever convention they were given in.
std::array<double, 6> torque_gains(const design::GainPreset& gains,
                                   const HeliParams& p, GainConvention convention);

/// Closed-loop state matrix of the refined linear part. Rows 1–4 are the
/// integrator/derivative chain; rows 5–6 are the torque equations scaled by
/// α₁ and α₂.
Matrix6d refined_linear_A(const HeliParams& p, const design::GainPreset& gains,
                          double theta_d,
                          GainConvention convention = GainConvention::kTorque);

/// Nonlinear residual vector N(z) of the refined linear form, term for term.
StateZ residual_N(const HeliParams& p, const StateZ& z, double theta_d);

struct ConstantBias {
  /// Only component 5 is non-zero: −α₁·m·g·l + α₁·m·g·l·θ_d²/2.
  StateZ vector = StateZ::Zero();
  /// Pitch feedforward that cancels it: m·g·l·(1 − θ_d²/2).
  double feedforward_torque = 0.0;
};

ConstantBias constant_bias(const HeliParams& p, double theta_d);

/// E = m·g·l·sin θ + ½Jp·θ̇² + ½Jy·ψ̇² + ½m[(l·θ̇)² + (l·cos θ·ψ̇)²]
double total_energy(const HeliParams& p, const HeliState& s);

/// ż for the small-angle plant under the ideal bias-compensated law
/// T_θ = bias − k₁z₁ − k₂z₃ − k₃z₅, T_ψ = −k₄z₂ − k₅z₄ − k₆z₆.
StateZ closed_loop_z_derivative(const HeliParams& p,
                                const design::GainPreset& gains,
                                double theta_d, const StateZ& z,
                                GainConvention convention = GainConvention::kTorque,
                                PsiCoupling coupling = PsiCoupling::kSolved);

}  // namespace helictl::heli
