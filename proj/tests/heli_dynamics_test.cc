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
#include <numbers>

#include <gtest/gtest.h>

#include "helictl/lti_core.h"
#include "helictl/sim_runtime.h"
#include "test_oracles.h"

namespace helictl::heli {
namespace {

using testing::Uniform;

HeliParams bench() {
  return HeliParams{.Jp = 0.03, .Jy = 0.04, .m = 1.0, .l = 0.2, .Bp = 0.1, .By = 0.1, .g = 9.81};
}

void expect_rel(double got, double want, double rel) {
  EXPECT_NEAR(got, want, rel * std::abs(want)) << "want " << want;
}

TEST(Params, Validation) {
  EXPECT_NO_THROW(bench().validate());
  EXPECT_NO_THROW(plausible_rig_params().validate());
  HeliParams p = bench();
  p.Jp = 0.0;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = bench();
  p.Bp = -1.0;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = bench();
  p.l = NAN;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = bench();
  p.Bp = 0.0;
  EXPECT_NO_THROW(p.validate());
}

// Reference values below come from a symbolic Lagrangian derivation of the
// same rig evaluated in extended precision.
TEST(FullModel, PinnedAccelerations) {
  const auto a = full_accelerations(bench(), {0.2, 0.0, 0.1, 0.3}, {1.0, 0.5});
  expect_rel(a.theta_ddot, -13.337022553438164, 1e-13);
  expect_rel(a.psi_ddot, 5.9992346807449861, 1e-13);
  const auto b = full_accelerations(bench(), {0.3, 1.0, 0.2, 0.4}, {1.0, 0.5});
  expect_rel(b.theta_ddot, -12.802529251132901, 1e-13);
  expect_rel(b.psi_ddot, 6.0361612993500442, 1e-13);
}

TEST(FullModel, YawAngleDoesNotMatter) {
  const auto a = full_accelerations(bench(), {0.2, 0.0, 0.1, 0.3}, {1.0, 0.5});
  const auto b = full_accelerations(bench(), {0.2, 2.5, 0.1, 0.3}, {1.0, 0.5});
  EXPECT_EQ(a.theta_ddot, b.theta_ddot);
  EXPECT_EQ(a.psi_ddot, b.psi_ddot);
}

TEST(FullModel, HoverEquilibrium) {
  const HeliParams p = bench();
  const auto a = full_accelerations(p, {0.0, 0.0, 0.0, 0.0}, {p.mgl(), 0.0});
  EXPECT_NEAR(a.theta_ddot, 0.0, 1e-15);
  EXPECT_EQ(a.psi_ddot, 0.0);
}

TEST(FullModel, RejectsNonFinite) {
  EXPECT_THROW(full_accelerations(bench(), {NAN, 0, 0, 0}, {0, 0}), std::invalid_argument);
  EXPECT_THROW(full_accelerations(bench(), {0, 0, 0, 0}, {INFINITY, 0}), std::invalid_argument);
}

TEST(SmallAngleModel, PinnedAccelerations) {
  const HeliState s{0.3, 0.0, 0.2, 0.4};
  const auto solved = small_angle_accelerations(bench(), s, {1.0, 0.5}, PsiCoupling::kSolved);
  const auto neglected = small_angle_accelerations(bench(), s, {1.0, 0.5}, PsiCoupling::kNeglected);
  expect_rel(solved.theta_ddot, -12.8546, 1e-12);
  expect_rel(solved.psi_ddot, 6.10094240837696335, 1e-12);
  EXPECT_EQ(neglected.theta_ddot, solved.theta_ddot);
  expect_rel(neglected.psi_ddot, 5.8264, 1e-12);
}

TEST(SmallAngleModel, SingularYawInertia) {
  HeliParams p = bench();
  p.Jy = 0.001;  // Jy + m·l²(1 − θ²) vanishes near θ = 1.012
  EXPECT_THROW(small_angle_accelerations(p, {1.1, 0, 0, 0}, {0, 0}), SingularModelError);
  EXPECT_NO_THROW(small_angle_accelerations(p, {1.1, 0, 0, 0}, {0, 0}, PsiCoupling::kNeglected));
}

TEST(SmallAngleModel, AgreesWithFullModelAtLevelWithoutYawRate) {
  const HeliParams p = bench();
  const auto f = full_accelerations(p, {0, 0, 0.3, 0}, {0.7, -0.1});
  const auto s = small_angle_accelerations(p, {0, 0, 0.3, 0}, {0.7, -0.1});
  EXPECT_NEAR(f.theta_ddot, s.theta_ddot, 1e-13);
  EXPECT_NEAR(f.psi_ddot, s.psi_ddot, 1e-14);
}

TEST(SmallAngleModel, RateCouplingsSurviveAtLevel) {
  // The approximate model keeps −m·l²·ψ̇² and 2·m·l²·θ̇·ψ̇ without the sin θ factor.
  const HeliParams p = bench();
  const double td = 0.3, pd = -0.2;
  const auto f = full_accelerations(p, {0, 0, td, pd}, {0.7, -0.1});
  const auto s = small_angle_accelerations(p, {0, 0, td, pd}, {0.7, -0.1});
  EXPECT_NEAR(f.theta_ddot - s.theta_ddot, p.alpha1() * p.ml2() * pd * pd, 1e-13);
  EXPECT_NEAR(s.psi_ddot - f.psi_ddot, p.alpha2() * 2.0 * p.ml2() * td * pd, 1e-13);
}

TEST(SmallAngleModel, PitchGapScalesAsFourthPower) {
  // Without rates the gap is α₁·m·g·l·(cos θ − 1 + θ²/2) ≈ α₁·m·g·l·θ⁴/24.
  const HeliParams p = bench();
  double prev = 0.0;
  for (double th : {0.05, 0.10, 0.20}) {
    const HeliState s{th, 0, 0, 0};
    const double gap = std::abs(full_accelerations(p, s, {0, 0}).theta_ddot -
                                small_angle_accelerations(p, s, {0, 0}).theta_ddot);
    EXPECT_NEAR(gap / (p.alpha1() * p.mgl() * std::pow(th, 4) / 24.0), 1.0, 0.01) << th;
    if (prev > 0.0) {
      EXPECT_NEAR(gap / prev, 16.0, 0.5) << th;
    }
    prev = gap;
  }
}

TEST(RefinedLinear, EqualsLinearPartWithoutResidual) {
  const HeliParams p = bench();
  const double td = 0.1;
  const HeliState s{td + 0.02, 0.3, -0.1, 0.05};
  const Torques u{1.5, 0.2};
  const auto a = refined_linear_accelerations(p, s, u, td, false);
  const double z3 = 0.02;
  EXPECT_NEAR(a.theta_ddot,
              p.alpha1() * (u.theta - p.Bp * s.theta_dot - p.mgl() + p.mgl() * td * td / 2 +
                            p.mgl() * td * z3),
              1e-13);
  EXPECT_NEAR(a.psi_ddot, p.alpha2() * (u.psi - p.By * s.psi_dot), 1e-15);
  const auto r = refined_linear_accelerations(p, s, u, td, true);
  StateZ z;
  z << 0, 0, z3, 0, s.theta_dot, s.psi_dot;
  const StateZ n = residual_N(p, z, td);
  EXPECT_NEAR(r.theta_ddot - a.theta_ddot, n(4), 1e-13);
  EXPECT_NEAR(r.psi_ddot - a.psi_ddot, n(5), 1e-13);
}

TEST(StateMatrix, EntriesForTorqueGains) {
  const HeliParams p = bench();
  const auto g = design::paper_gain_preset();
  const double a1 = 1.0 / (p.Jp + p.m * p.l * p.l);
  const double a2 = 1.0 / (p.Jy + p.m * p.l * p.l);
  const Matrix6d A = refined_linear_A(p, g, 0.0);
  Matrix6d want = Matrix6d::Zero();
  want(0, 2) = want(1, 3) = want(2, 4) = want(3, 5) = 1.0;
  want(4, 0) = -a1 * 1.7431;
  want(4, 2) = -a1 * 2.4095;
  want(4, 4) = -a1 * (0.3849 + p.Bp);
  want(5, 1) = -a2 * 1.8398;
  want(5, 3) = -a2 * 2.5431;
  want(5, 5) = -a2 * (0.9326 + p.By);
  EXPECT_LE((A - want).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(StateMatrix, PrescaledGainsAppearUnscaled) {
  const HeliParams p = bench();
  const auto g = design::paper_gain_preset();
  const Matrix6d A = refined_linear_A(p, g, 0.2, GainConvention::kPrescaled);
  EXPECT_DOUBLE_EQ(A(4, 0), -1.7431);
  EXPECT_DOUBLE_EQ(A(4, 2), -2.4095 + p.alpha1() * p.mgl() * 0.2);
  EXPECT_DOUBLE_EQ(A(5, 5), -0.9326 - p.alpha2() * p.By);
  const auto k = torque_gains(g, p, GainConvention::kPrescaled);
  EXPECT_DOUBLE_EQ(k[0] * p.alpha1(), 1.7431);
  EXPECT_DOUBLE_EQ(k[5] * p.alpha2(), 0.9326);
}

TEST(StateMatrix, PresetPolesOnPlausibleRig) {
  const HeliParams p = plausible_rig_params();
  const Matrix6d A = refined_linear_A(p, design::paper_gain_preset(), 0.0);
  const auto roots = lti::poly_roots(lti::CharPoly(testing::faddeev_leverrier(A)));
  ASSERT_EQ(roots.size(), 6u);
  for (const auto& z : roots) EXPECT_LT(z.real(), -1.0);
  // Pitch block: s³ + α₁(k₃ + Bp)s² + α₁k₂s + α₁k₁.
  const double a1 = p.alpha1();
  const auto pitch = lti::poly_roots(lti::CharPoly({a1 * 1.7431, a1 * 2.4095, a1 * (0.3849 + p.Bp), 1.0}));
  EXPECT_NEAR(pitch[0].real(), -1.1429, 1e-3);
  EXPECT_NEAR(std::abs(pitch[0].imag()), 0.6776, 1e-3);
  EXPECT_NEAR(pitch[2].real(), -11.43, 1e-2);
}

TEST(StateMatrix, MatchesFiniteDifferenceJacobianAtOrigin) {
  const auto g = design::paper_gain_preset();
  for (const HeliParams& p : {bench(), plausible_rig_params()}) {
    const Matrix6d A = refined_linear_A(p, g, 0.0);
    const double h = 1e-6;
    for (int j = 0; j < 6; ++j) {
      StateZ e = StateZ::Zero();
      e(j) = h;
      const StateZ col = (closed_loop_z_derivative(p, g, 0.0, e) -
                          closed_loop_z_derivative(p, g, 0.0, -e)) / (2 * h);
      for (int i = 0; i < 6; ++i) {
        EXPECT_NEAR(col(i), A(i, j), 1e-5 * std::max(1.0, std::abs(A(i, j)))) << i << "," << j;
      }
    }
  }
}

TEST(StateMatrix, JacobianAwayFromLevelWithNeglectedCoupling) {
  const HeliParams p = bench();
  const auto g = design::paper_gain_preset();
  const double td = 0.15;
  const Matrix6d A = refined_linear_A(p, g, td);
  const double h = 1e-6;
  for (int j = 0; j < 6; ++j) {
    StateZ e = StateZ::Zero();
    e(j) = h;
    const StateZ col = (closed_loop_z_derivative(p, g, td, e, GainConvention::kTorque, PsiCoupling::kNeglected) -
                        closed_loop_z_derivative(p, g, td, -e, GainConvention::kTorque, PsiCoupling::kNeglected)) /
                       (2 * h);
    for (int i = 0; i < 6; ++i) {
      EXPECT_NEAR(col(i), A(i, j), 1e-5 * std::max(1.0, std::abs(A(i, j)))) << i << "," << j;
    }
  }
}

TEST(Residual, Examples) {
  const HeliParams p = bench();
  EXPECT_EQ(residual_N(p, StateZ::Zero(), 0.3), StateZ::Zero());
  StateZ z = StateZ::Zero();
  z(2) = 0.1;
  StateZ n = residual_N(p, z, 0.0);
  EXPECT_NEAR(n(4), p.alpha1() * p.mgl() * 0.01 / 2, 1e-15);
  EXPECT_EQ(n(5), 0.0);
  z = StateZ::Zero();
  z(4) = 0.2;
  z(5) = 0.5;
  n = residual_N(p, z, 0.0);
  EXPECT_NEAR(n(4), -p.alpha1() * p.ml2() * 0.25, 1e-15);
  EXPECT_NEAR(n(5), 2 * p.alpha2() * p.ml2() * 0.1, 1e-15);
  for (int i = 0; i < 4; ++i) EXPECT_EQ(n(i), 0.0);
}

TEST(Residual, IgnoresIntegratorsAndYawError) {
  const HeliParams p = bench();
  Uniform u(4);
  for (int t = 0; t < 50; ++t) {
    StateZ z;
    for (int i = 0; i < 6; ++i) z(i) = u(-0.2, 0.2);
    StateZ w = z;
    w(0) = u(-5, 5);
    w(1) = u(-5, 5);
    w(3) = u(-5, 5);
    EXPECT_EQ(residual_N(p, z, 0.1), residual_N(p, w, 0.1));
  }
}

TEST(Residual, QuadraticBoundHoldsInSmallBall) {
  const HeliParams p = bench();
  const double kappa = std::hypot(p.alpha1() * p.mgl() / 2, 3 * p.alpha2() * p.ml2());
  Uniform u(99);
  for (int t = 0; t < 20000; ++t) {
    StateZ z;
    for (int i = 0; i < 6; ++i) z(i) = u(-1, 1);
    z *= u(0, 0.1) / z.norm();
    EXPECT_LE(residual_N(p, z, 0.0).norm(), kappa * z.squaredNorm());
  }
}

TEST(ConstantBias, Examples) {
  const HeliParams p = bench();
  auto b = constant_bias(p, 0.0);
  EXPECT_DOUBLE_EQ(b.vector(4), -p.alpha1() * p.mgl());
  EXPECT_DOUBLE_EQ(b.feedforward_torque, p.mgl());
  b = constant_bias(p, 0.2);
  EXPECT_DOUBLE_EQ(b.feedforward_torque, p.mgl() * 0.98);
  EXPECT_NEAR(b.vector(4) + p.alpha1() * b.feedforward_torque, 0.0, 1e-14);
  for (int i : {0, 1, 2, 3, 5}) EXPECT_EQ(b.vector(i), 0.0);
}

TEST(ClosedLoop, EquilibriumAtSetpoint) {
  const HeliParams p = bench();
  for (double td : {0.0, 0.1, -0.2}) {
    const StateZ dz = closed_loop_z_derivative(p, design::paper_gain_preset(), td, StateZ::Zero());
    EXPECT_LE(dz.cwiseAbs().maxCoeff(), 1e-13) << td;
  }
}

TEST(Energy, Examples) {
  HeliParams p = bench();
  p.m = 1.0;
  p.l = 0.2;
  EXPECT_NEAR(total_energy(p, {std::numbers::pi / 6, 0, 0, 0}), 0.981, 1e-12);
  EXPECT_EQ(total_energy(p, {0, 0, 0, 0}), 0.0);
  EXPECT_NEAR(total_energy(p, {0, 0, 1.0, 0}), 0.5 * (p.Jp + p.ml2()), 1e-15);
  EXPECT_NEAR(total_energy(p, {0, 0, 0, 1.0}), 0.5 * (p.Jy + p.ml2()), 1e-15);
}

TEST(Energy, ConservedWithoutFrictionOrTorque) {
  HeliParams p = bench();
  p.Bp = p.By = 0.0;
  const HeliState s0{0.3, 0.0, 0.5, -0.8};
  const auto traj = sim::integrate_open_loop(p, s0, {0, 0}, sim::PlantModel::kFull, 1e-4, 20000);
  const double e0 = total_energy(p, s0);
  double worst = 0.0;
  for (const auto& s : traj) worst = std::max(worst, std::abs(total_energy(p, s) - e0));
  EXPECT_LE(worst, 1e-6);
}

TEST(Energy, NonIncreasingWithFriction) {
  const HeliParams p = bench();
  const auto traj = sim::integrate_open_loop(p, {0.4, 0, 1.0, 2.0}, {0, 0}, sim::PlantModel::kFull, 1e-3, 5000);
  double prev = total_energy(p, traj.front());
  for (std::size_t i = 1; i < traj.size(); ++i) {
    const double e = total_energy(p, traj[i]);
    EXPECT_LE(e, prev + 1e-9) << i;
    prev = e;
  }
}

}  // namespace
}  // namespace helictl::heli
