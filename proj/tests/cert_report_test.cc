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

#include <sstream>

#include <gtest/gtest.h>

namespace helictl::cli {
namespace {

Scenario lab_scenario(const std::string& extra = "", int trajectories = 12) {
  std::istringstream in(
      "[defaults]\nparams = plausible_rig\npreset = paper2dof\n"
      "[scenario lab]\ntheta0_deg = -40.5\npsi_d_deg = 10\ncert_trajectories = " +
      std::to_string(trajectories) + "\n" + extra);
  return parse_config(in, "lab.ini", ".").scenarios.at(0);
}

TEST(Sampling, DeterministicAndInsideBall) {
  cert::Certificate c;
  c.z0_max = 2e-4;
  CertSettings s;
  s.trajectories = 200;
  const auto a = sample_initial_states(c, s);
  const auto b = sample_initial_states(c, s);
  ASSERT_EQ(a.size(), 200u);
  double smallest = 1.0, largest = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i], b[i]);
    smallest = std::min(smallest, a[i].norm());
    largest = std::max(largest, a[i].norm());
  }
  EXPECT_GT(smallest, 0.0);
  EXPECT_LE(largest, 0.5 * 2e-4 * (1 + 1e-12));
  EXPECT_GT(largest, 0.4 * 2e-4);
  s.seed = 2;
  EXPECT_NE(sample_initial_states(c, s)[0], a[0]);
  s.trajectories = 0;
  EXPECT_TRUE(sample_initial_states(c, s).empty());
}

TEST(CertificationRuntime, IdealisedLoop) {
  const Scenario s = lab_scenario();
  heli::StateZ z0;
  z0 << 1, 2, 3, 4, 5, 6;
  const auto r = certification_runtime(s, z0);
  EXPECT_EQ(r.model, sim::PlantModel::kSmallAngle);
  EXPECT_EQ(r.controller, sim::ControllerMode::kContinuous);
  EXPECT_FALSE(r.quantize);
  EXPECT_FALSE(r.travel_limits);
  EXPECT_EQ(r.z1_0, 1.0);
  EXPECT_DOUBLE_EQ(r.psi0, s.runtime.psi_d + 4.0);
  EXPECT_EQ(r.psi_dot0, 6.0);
  EXPECT_EQ(r.t_end, 60.0);
  EXPECT_EQ(r.dt, 0.01);
}

TEST(ScenarioState, LabStartIsFarOutsideCertifiedBall) {
  const Scenario s = lab_scenario();
  const heli::StateZ z = scenario_initial_state(s);
  EXPECT_DOUBLE_EQ(z(2), s.runtime.theta0);
  EXPECT_DOUBLE_EQ(z(3), -s.runtime.psi_d);
}

TEST(Certify, LabScenarioPasses) {
  const CertificationRun run = certify_scenario(lab_scenario());
  EXPECT_TRUE(run.pass);
  EXPECT_TRUE(run.boundedness.pass);
  EXPECT_EQ(run.boundedness.entries.size(), 12u);
  EXPECT_EQ(run.convergence_failures, 0u);
  EXPECT_TRUE(run.trivial.pass);
  EXPECT_EQ(run.trivial.max_norm, 0.0);
  EXPECT_FALSE(run.scenario_gamma);  // −40.5° is not a small perturbation
  for (const auto& c : run.convergence) {
    EXPECT_LT(c.d_at_40, 1e-4);
    EXPECT_TRUE(c.rate_ok) << c.report.fitted_rate;
  }

  const std::string text = format_report(run);
  for (const char* key : {"scenario: lab\n", "beta: ", "kappa: ", "lambda1_real: ", "z0_max: ",
                          "gamma: ", "boundedness: PASS", "convergence: PASS", "trivially_bounded: ",
                          "result: PASS", "[boundedness]", "[convergence]", "[trivial]",
                          "scenario_gamma: infeasible"}) {
    EXPECT_NE(text.find(key), std::string::npos) << key;
  }
  EXPECT_EQ(text, format_report(certify_scenario(lab_scenario())));
}

TEST(Certify, SignFlippedIntegralGainThrowsUnstable) {
  EXPECT_THROW(certify_scenario(lab_scenario("k1 = -1.7431\n")), cert::UnstableSystemError);
}

TEST(Certify, NoTrajectoriesStillReportsTrivialSection) {
  const CertificationRun run = certify_scenario(lab_scenario("", 0));
  EXPECT_TRUE(run.initial_states.empty());
  EXPECT_NE(format_report(run).find("[trivial]"), std::string::npos);
}

}  // namespace
}  // namespace helictl::cli
