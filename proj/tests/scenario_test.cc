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

#include "helictl/scenario.h"

#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <gtest/gtest.h>

namespace helictl::cli {
namespace {

Batch parse(const std::string& text, const std::filesystem::path& dir = ".") {
  std::istringstream in(text);
  return parse_config(in, "test.ini", dir);
}

int error_line(const std::string& text) {
  try {
    parse(text);
  } catch (const ConfigError& e) {
    return e.line();
  }
  return -1;
}

const char* kBase =
    "[defaults]\n"
    "params = plausible_rig\n"
    "preset = paper2dof\n";

TEST(Config, MinimalScenarioInheritsDefaults) {
  const Batch b = parse(std::string(kBase) + "[scenario a]\ntheta0_deg = -40.5\npsi_d_deg = 10\n");
  ASSERT_EQ(b.scenarios.size(), 1u);
  const Scenario& s = b.scenarios[0];
  EXPECT_EQ(s.name, "a");
  EXPECT_EQ(s.line, 4);
  EXPECT_EQ(s.gains.name, "paper2dof");
  EXPECT_DOUBLE_EQ(s.runtime.theta0, -40.5 * std::numbers::pi / 180);
  EXPECT_DOUBLE_EQ(s.runtime.psi_d, 10 * std::numbers::pi / 180);
  EXPECT_EQ(s.params.m, heli::plausible_rig_params().m);
  EXPECT_FALSE(s.runtime.map_pitch.is_identity());
  EXPECT_TRUE(b.warnings.empty());
  EXPECT_TRUE(s.wants(Output::kTraceCsv));
  EXPECT_FALSE(s.wants(Output::kCertificateReport));
}

TEST(Config, ScenarioOverridesDefaults) {
  const Batch b = parse(
      "[defaults]\nparams = plausible_rig\npreset = paper2dof\nt_end = 10\n"
      "[scenario a]\nt_end = 5 # shorter\n[scenario b]\n");
  EXPECT_EQ(b.scenarios[0].runtime.t_end, 5.0);
  EXPECT_EQ(b.scenarios[1].runtime.t_end, 10.0);
}

TEST(Config, CommentsAndBlankLines) {
  const Batch b = parse(std::string("# header\n; also a comment\n\n") + kBase + "\n[scenario x]\r\n");
  EXPECT_EQ(b.scenarios.size(), 1u);
}

TEST(Config, EmptyBatchIsAllowed) {
  EXPECT_TRUE(parse("").scenarios.empty());
  EXPECT_TRUE(parse(kBase).scenarios.empty());
}

TEST(Config, ExplicitGainsAndOverrides) {
  Batch b = parse(std::string(kBase) + "[scenario a]\nk1 = -1.7431\n");
  EXPECT_EQ(b.scenarios[0].gains.name, "paper2dof+k1");
  EXPECT_EQ(b.scenarios[0].gains.k(1), -1.7431);
  b = parse("[scenario c]\nparams = plausible_rig\nk1=1\nk2=2\nk3=3\nk4=4\nk5=5\nk6=6\n");
  EXPECT_EQ(b.scenarios[0].gains.name, "custom");
  EXPECT_EQ(b.scenarios[0].gains.k(6), 6.0);
  EXPECT_EQ(error_line("[scenario c]\nparams = plausible_rig\nk1=1\n"), 1);
}

TEST(Config, CustomParamsNeedEveryValue) {
  const Batch b = parse(
      "[scenario a]\npreset = paper2dof\nparams = custom\nJp=0.03\nJy=0.04\nm=1\nl=0.2\nBp=0.1\nBy=0.1\n");
  EXPECT_EQ(b.scenarios[0].params.g, 9.81);
  ASSERT_EQ(b.warnings.size(), 1u);  // identity voltage maps
  EXPECT_NE(b.warnings[0].find("identity"), std::string::npos);
  EXPECT_EQ(error_line("[scenario a]\npreset = paper2dof\nparams = custom\nJp=0.03\n"), 1);
}

TEST(Config, UnitConversions) {
  const Batch b = parse(std::string(kBase) +
                        "[scenario a]\nfilter_wc_hz = 20\nenc_counts_pitch = 1024\n"
                        "antiwindup_reset_s = off\n");
  const auto& r = b.scenarios[0].runtime;
  EXPECT_DOUBLE_EQ(r.filter_wc, 40 * std::numbers::pi);
  EXPECT_DOUBLE_EQ(r.enc_res_pitch, 2 * std::numbers::pi / 1024);
  EXPECT_TRUE(std::isinf(r.antiwindup_reset_s));
}

TEST(Config, ModelChoices) {
  const Batch b = parse(std::string(kBase) +
                        "[scenario a]\nmodel = small_angle\npsi_coupling = neglected\n"
                        "controller = continuous\nquantize = no\n");
  const auto& r = b.scenarios[0].runtime;
  EXPECT_EQ(r.model, sim::PlantModel::kSmallAngle);
  EXPECT_EQ(r.psi_coupling, heli::PsiCoupling::kNeglected);
  EXPECT_EQ(r.controller, sim::ControllerMode::kContinuous);
  EXPECT_FALSE(r.quantize);
}

TEST(Config, Disturbances) {
  Batch b = parse(std::string(kBase) +
                  "[scenario a]\ndisturbance = step\ndisturbance_pitch = 5:0.2\n");
  EXPECT_EQ(b.scenarios[0].disturbance.kind, sim::DisturbanceKind::kStep);
  ASSERT_EQ(b.scenarios[0].disturbance.pitch.size(), 1u);
  EXPECT_EQ(b.scenarios[0].disturbance.pitch[0].value, 0.2);

  b = parse(std::string(kBase) +
            "[scenario r]\ndisturbance = random\nseed = 4\ndisturbance_dwell = 1\n"
            "disturbance_amplitude = 0.1\nt_end = 10\n");
  const Scenario& r = b.scenarios[0];
  EXPECT_TRUE(r.random_disturbance);
  EXPECT_EQ(r.disturbance.pitch.size(), 10u);
  Scenario copy = r;
  copy.reseed(5);
  EXPECT_NE(copy.disturbance.pitch[0].value, r.disturbance.pitch[0].value);
  copy.reseed(4);
  EXPECT_EQ(copy.disturbance.pitch[0].value, r.disturbance.pitch[0].value);
}

TEST(Config, DisturbanceTableFileIsRelativeToConfig) {
  const auto dir = std::filesystem::temp_directory_path() / "helictl_scenario_test";
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "steps.csv") << "t_s,torque_N_m\n1,0.1\n2,-0.1\n";
  const Batch b = parse(std::string(kBase) +
                            "[scenario a]\ndisturbance = piecewise\ndisturbance_yaw_file = steps.csv\n",
                        dir);
  EXPECT_EQ(b.scenarios[0].disturbance.yaw.size(), 2u);
  EXPECT_EQ(error_line(std::string(kBase) +
                       "[scenario a]\ndisturbance = piecewise\ndisturbance_yaw_file = missing.csv\n"),
            6);
}

TEST(Config, Outputs) {
  Batch b = parse(std::string(kBase) + "[scenario a]\noutputs = none\n");
  EXPECT_TRUE(b.scenarios[0].outputs.empty());
  b = parse(std::string(kBase) + "[scenario a]\noutputs = certificate_report, trace_csv\n");
  EXPECT_EQ(b.scenarios[0].outputs.size(), 2u);
  EXPECT_TRUE(b.scenarios[0].wants(Output::kCertificateReport));
  EXPECT_EQ(error_line(std::string(kBase) + "[scenario a]\noutputs = movie\n"), 5);
}

TEST(ConfigErrors, LinePrecise) {
  EXPECT_EQ(error_line(std::string(kBase) + "[scenario a]\ndt = 0.001\nbogus = 1\n"), 6);
  EXPECT_EQ(error_line(std::string(kBase) + "[scenario a]\ndt = fast\n"), 5);
  EXPECT_EQ(error_line(std::string(kBase) + "[scenario a]\n[scenario a]\n"), 5);
  EXPECT_EQ(error_line("preset = paper2dof\n"), 1);
  EXPECT_EQ(error_line("[scenario a]\n[defaults]\n"), 2);
  EXPECT_EQ(error_line(std::string(kBase) + "[defaults]\n"), 4);
  EXPECT_EQ(error_line(std::string(kBase) + "[scenario a]\ndt = 1\ndt = 2\n"), 6);
  EXPECT_EQ(error_line(std::string(kBase) + "[scenario bad/name]\n"), 4);
  EXPECT_EQ(error_line(std::string(kBase) + "[scenario a\n"), 4);
  EXPECT_EQ(error_line(std::string(kBase) + "[scenario a]\njust words\n"), 5);
}

TEST(ConfigErrors, BadPresetNamesTheKeyLine) {
  try {
    parse("[defaults]\nparams = plausible_rig\n\n[scenario a]\npreset = nonesuch\n");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.line(), 5);
    EXPECT_NE(std::string(e.what()).find("test.ini:5:"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("nonesuch"), std::string::npos);
  }
}

TEST(ConfigErrors, ConflictingSpellings) {
  EXPECT_EQ(error_line(std::string(kBase) + "[scenario a]\ntheta0 = 0.1\ntheta0_deg = 5\n"), 6);
  EXPECT_EQ(error_line(std::string(kBase) + "[scenario a]\nfilter_wc = 100\nfilter_wc_hz = 20\n"), 6);
  EXPECT_EQ(error_line(std::string(kBase) + "[scenario a]\nenc_counts_yaw = 10\nenc_res_yaw = 0.1\n"), 6);
}

TEST(ConfigErrors, RuntimeValidationReportsSection) {
  EXPECT_EQ(error_line(std::string(kBase) + "[scenario a]\nctrl_dt = 0.0015\n"), 4);
  EXPECT_EQ(error_line(std::string(kBase) + "[scenario a]\ncert_z0_fraction = 2\n"), 4);
  EXPECT_EQ(error_line(std::string(kBase) + "[scenario a]\nrecord_stride = 1.5\n"), 5);
}

TEST(LoadConfig, MissingFile) {
  EXPECT_THROW(load_config("/nonexistent/helictl.ini"), std::runtime_error);
}

}  // namespace
}  // namespace helictl::cli
