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

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <string_view>

namespace helictl::cli {
namespace {

struct Entry {
  std::string value;
  int line = 0;
};

struct Section {
  std::string name;  // empty for [defaults]
  int line = 0;
  std::map<std::string, Entry> keys;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool valid_name(std::string_view s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
  }) && s != "." && s != "..";
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::optional<double> to_number(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(v)) {
    return std::nullopt;
  }
  return v;
}

class Builder {
 public:
  Builder(const std::string& source, const Section& section,
          const std::filesystem::path& base_dir)
      : source_(source), section_(section), keys_(section.keys), base_dir_(base_dir) {}

  Scenario build(std::vector<std::string>& warnings);

 private:
  [[noreturn]] void fail(int line, const std::string& msg) const {
    throw ConfigError(source_, line, "scenario '" + section_.name + "': " + msg);
  }
  [[noreturn]] void fail(const Entry& e, const std::string& key, const std::string& msg) const {
    fail(e.line, key + ": " + msg);
  }

  std::optional<Entry> take(const std::string& key) {
    const auto it = keys_.find(key);
    if (it == keys_.end()) return std::nullopt;
    Entry e = it->second;
    keys_.erase(it);
    return e;
  }

  std::optional<double> number(const std::string& key) {
    const auto e = take(key);
    if (!e) return std::nullopt;
    const auto v = to_number(e->value);
    if (!v) fail(*e, key, "expected a finite number, got '" + e->value + "'");
    return v;
  }

  void number_into(const std::string& key, double& target) {
    if (const auto v = number(key)) target = *v;
  }

  /// `key` in radians or `key_deg` in degrees, never both.
  void angle_into(const std::string& key, double& target) {
    const auto rad = keys_.find(key);
    const auto deg = keys_.find(key + "_deg");
    if (rad != keys_.end() && deg != keys_.end()) {
      fail(std::max(rad->second.line, deg->second.line),
           key + " and " + key + "_deg are both set");
    }
    if (const auto v = number(key)) target = *v;
    if (const auto v = number(key + "_deg")) target = *v * sim::kDegree;
  }

  void bool_into(const std::string& key, bool& target) {
    const auto e = take(key);
    if (!e) return;
    const std::string v = lower(e->value);
    if (v == "true" || v == "yes" || v == "on" || v == "1") {
      target = true;
    } else if (v == "false" || v == "no" || v == "off" || v == "0") {
      target = false;
    } else {
      fail(*e, key, "expected true/false, got '" + e->value + "'");
    }
  }

  template <typename Enum>
  void choice_into(const std::string& key,
                   const std::vector<std::pair<std::string, Enum>>& options,
                   Enum& target) {
    const auto e = take(key);
    if (!e) return;
    const std::string v = lower(e->value);
    for (const auto& [label, value] : options) {
      if (v == label) {
        target = value;
        return;
      }
    }
    std::string allowed;
    for (const auto& [label, value] : options) allowed += (allowed.empty() ? "" : " | ") + label;
    fail(*e, key, "expected " + allowed + ", got '" + e->value + "'");
  }

  std::vector<sim::Breakpoint> breakpoints(const std::string& axis);

  void build_params(Scenario& s);
  void build_gains(Scenario& s);
  void build_runtime(Scenario& s);
  void build_disturbance(Scenario& s);
  void build_outputs(Scenario& s);

  const std::string& source_;
  const Section& section_;
  std::map<std::string, Entry> keys_;
  std::filesystem::path base_dir_;
};

void Builder::build_params(Scenario& s) {
  bool custom = true;
  if (const auto e = take("params")) {
    const std::string v = lower(e->value);
    if (v == "plausible_rig") {
      const sim::RigProfile rig = sim::plausible_rig();
      s.params = rig.params;
      s.runtime.map_pitch = rig.map_pitch;
      s.runtime.map_yaw = rig.map_yaw;
      custom = false;
    } else if (v != "custom") {
      fail(*e, "params", "expected plausible_rig | custom, got '" + e->value + "'");
    }
  }
  const std::pair<const char*, double heli::HeliParams::*> fields[] = {
      {"Jp", &heli::HeliParams::Jp}, {"Jy", &heli::HeliParams::Jy},
      {"m", &heli::HeliParams::m},   {"l", &heli::HeliParams::l},
      {"Bp", &heli::HeliParams::Bp}, {"By", &heli::HeliParams::By},
      {"g", &heli::HeliParams::g}};
  for (const auto& [key, member] : fields) {
    if (const auto v = number(key)) {
      s.params.*member = *v;
    } else if (custom && std::string_view(key) != "g") {
      fail(section_.line, std::string("missing parameter ") + key +
                              " (set it, or use params = plausible_rig)");
    }
  }
  try {
    s.params.validate();
  } catch (const std::exception& ex) {
    fail(section_.line, ex.what());
  }
}

void Builder::build_gains(Scenario& s) {
  bool have_preset = false;
  if (const auto e = take("preset")) {
    const auto preset = design::find_preset(std::string(trim(e->value)));
    if (!preset) fail(*e, "preset", "unknown gain preset '" + e->value + "'");
    s.gains = *preset;
    have_preset = true;
  } else {
    s.gains.name = "custom";
  }
  for (int i = 1; i <= 6; ++i) {
    const std::string key = "k" + std::to_string(i);
    double& slot = i <= 3 ? s.gains.pitch[static_cast<std::size_t>(i - 1)]
                          : s.gains.yaw[static_cast<std::size_t>(i - 4)];
    if (const auto v = number(key)) {
      slot = *v;
      if (have_preset) s.gains.name += "+" + key;
    } else if (!have_preset) {
      fail(section_.line, "missing gain " + key + " (set it, or use a preset)");
    }
  }
  choice_into<heli::GainConvention>(
      "gain_convention",
      {{"torque", heli::GainConvention::kTorque}, {"prescaled", heli::GainConvention::kPrescaled}},
      s.runtime.gain_convention);
}

void Builder::build_runtime(Scenario& s) {
  sim::RuntimeConfig& r = s.runtime;
  number_into("dt", r.dt);
  number_into("t_end", r.t_end);
  number_into("ctrl_dt", r.ctrl_dt);
  angle_into("theta_d", r.theta_d);
  angle_into("psi_d", r.psi_d);
  angle_into("theta0", r.theta0);
  angle_into("psi0", r.psi0);
  angle_into("theta_dot0", r.theta_dot0);
  angle_into("psi_dot0", r.psi_dot0);
  number_into("z1_0", r.z1_0);
  number_into("z2_0", r.z2_0);
  number_into("filter_zeta", r.filter_zeta);
  if (keys_.count("filter_wc") && keys_.count("filter_wc_hz")) {
    fail(keys_.at("filter_wc_hz").line, "filter_wc and filter_wc_hz are both set");
  }
  number_into("filter_wc", r.filter_wc);
  if (const auto v = number("filter_wc_hz")) r.filter_wc = 2.0 * std::numbers::pi * *v;

  if (const auto e = take("antiwindup_reset_s")) {
    if (lower(e->value) == "off") {
      r.antiwindup_reset_s = std::numeric_limits<double>::infinity();
    } else if (const auto v = to_number(e->value); v && *v > 0.0) {
      r.antiwindup_reset_s = *v;
    } else {
      fail(*e, "antiwindup_reset_s", "expected a positive number or off, got '" + e->value + "'");
    }
  }
  number_into("v_limit_pitch", r.v_limit_pitch);
  number_into("v_limit_yaw", r.v_limit_yaw);
  for (const auto& [axis, res] :
       {std::pair<std::string, double*>{"pitch", &r.enc_res_pitch}, {"yaw", &r.enc_res_yaw}}) {
    const std::string counts_key = "enc_counts_" + axis;
    const std::string res_key = "enc_res_" + axis;
    if (keys_.count(counts_key) && keys_.count(res_key)) {
      fail(keys_.at(res_key).line, counts_key + " and " + res_key + " are both set");
    }
    if (const auto e = keys_.find(counts_key); e != keys_.end()) {
      const Entry entry = e->second;
      const auto v = number(counts_key);
      if (!(*v >= 1.0)) fail(entry, counts_key, "must be at least 1");
      *res = 2.0 * std::numbers::pi / *v;
    }
    number_into(res_key, *res);
  }
  bool_into("quantize", r.quantize);
  choice_into<sim::PlantModel>("model",
                               {{"full", sim::PlantModel::kFull},
                                {"small_angle", sim::PlantModel::kSmallAngle},
                                {"refined_linear", sim::PlantModel::kRefinedLinear}},
                               r.model);
  choice_into<heli::PsiCoupling>(
      "psi_coupling",
      {{"solved", heli::PsiCoupling::kSolved}, {"neglected", heli::PsiCoupling::kNeglected}},
      r.psi_coupling);
  bool_into("include_residual", r.include_residual);
  choice_into<sim::ControllerMode>(
      "controller",
      {{"sampled", sim::ControllerMode::kSampled}, {"continuous", sim::ControllerMode::kContinuous}},
      r.controller);
  bool_into("gravity_bias", r.gravity_bias);
  number_into("v_per_nm_pitch", r.map_pitch.gain);
  number_into("v_offset_pitch", r.map_pitch.offset);
  number_into("v_per_nm_yaw", r.map_yaw.gain);
  number_into("v_offset_yaw", r.map_yaw.offset);
  bool_into("travel_limits", r.travel_limits);
  angle_into("theta_min", r.theta_min);
  angle_into("theta_max", r.theta_max);
  number_into("forced_saturation_until", r.forced_saturation_until);
  number_into("forced_v_limit_pitch", r.forced_v_limit_pitch);
  number_into("forced_v_limit_yaw", r.forced_v_limit_yaw);
  if (const auto e = keys_.find("record_stride"); e != keys_.end()) {
    const Entry entry = e->second;
    const double v = *number("record_stride");
    if (v != std::floor(v) || v < 1.0 || v > 1e9) fail(entry, "record_stride", "must be a positive integer");
    r.record_stride = static_cast<int>(v);
  }
  try {
    r.validate();
  } catch (const std::exception& ex) {
    fail(section_.line, ex.what());
  }
}

std::vector<sim::Breakpoint> Builder::breakpoints(const std::string& axis) {
  const std::string list_key = "disturbance_" + axis;
  const std::string file_key = "disturbance_" + axis + "_file";
  if (keys_.count(list_key) && keys_.count(file_key)) {
    fail(keys_.at(file_key).line, list_key + " and " + file_key + " are both set");
  }
  std::vector<sim::Breakpoint> out;
  if (const auto e = take(list_key)) {
    for (std::string_view item : split(e->value, ',')) {
      const auto colon = item.find(':');
      if (colon == std::string_view::npos) {
        fail(*e, list_key, "expected t:value pairs separated by commas");
      }
      const auto t = to_number(item.substr(0, colon));
      const auto v = to_number(item.substr(colon + 1));
      if (!t || !v) fail(*e, list_key, "bad pair '" + std::string(item) + "'");
      out.push_back({*t, *v});
    }
  }
  if (const auto e = take(file_key)) {
    std::filesystem::path path(std::string(trim(e->value)));
    if (path.is_relative()) path = base_dir_ / path;
    std::ifstream in(path);
    if (!in) fail(*e, file_key, "cannot open '" + path.string() + "'");
    try {
      out = sim::read_step_table(in);
    } catch (const std::exception& ex) {
      fail(*e, file_key, path.string() + ": " + ex.what());
    }
  }
  return out;
}

void Builder::build_disturbance(Scenario& s) {
  sim::DisturbanceKind kind = sim::DisturbanceKind::kNone;
  bool random = false;
  const auto kind_entry = take("disturbance");
  if (kind_entry) {
    const std::string v = lower(kind_entry->value);
    if (v == "none") {
      kind = sim::DisturbanceKind::kNone;
    } else if (v == "step") {
      kind = sim::DisturbanceKind::kStep;
    } else if (v == "piecewise") {
      kind = sim::DisturbanceKind::kPiecewiseConstant;
    } else if (v == "impulse") {
      kind = sim::DisturbanceKind::kImpulseTrain;
    } else if (v == "random") {
      kind = sim::DisturbanceKind::kPiecewiseConstant;
      random = true;
    } else {
      fail(*kind_entry, "disturbance",
           "expected none | step | piecewise | impulse | random, got '" + kind_entry->value + "'");
    }
  }
  if (const auto v = number("seed")) {
    if (*v < 0.0 || *v != std::floor(*v) || *v > 9.007199254740992e15) {
      fail(section_.line, "seed must be a non-negative integer");
    }
    s.cert.seed = static_cast<std::uint64_t>(*v);
  }

  std::vector<sim::Breakpoint> pitch = breakpoints("pitch");
  std::vector<sim::Breakpoint> yaw = breakpoints("yaw");
  const auto dwell = number("disturbance_dwell");
  const auto amplitude = number("disturbance_amplitude");
  sim::DisturbanceAxes axes = sim::DisturbanceAxes::kPitch;
  choice_into<sim::DisturbanceAxes>("disturbance_axes",
                                    {{"pitch", sim::DisturbanceAxes::kPitch},
                                     {"yaw", sim::DisturbanceAxes::kYaw},
                                     {"both", sim::DisturbanceAxes::kBoth}},
                                    axes);
  const int line = kind_entry ? kind_entry->line : section_.line;
  if (random) {
    if (!dwell || !amplitude) fail(line, "random disturbance needs disturbance_dwell and disturbance_amplitude");
    if (!pitch.empty() || !yaw.empty()) fail(line, "random disturbance takes no breakpoint tables");
    s.random_disturbance = true;
    s.random_dwell = *dwell;
    s.random_amplitude = *amplitude;
    s.random_axes = axes;
    try {
      s.disturbance = sim::make_piecewise_disturbance(s.cert.seed, *dwell, *amplitude,
                                                      s.runtime.t_end, axes);
    } catch (const std::exception& ex) {
      fail(line, ex.what());
    }
    return;
  }
  if (dwell || amplitude) fail(line, "disturbance_dwell/amplitude apply to random disturbances only");
  if (kind == sim::DisturbanceKind::kNone) {
    if (!pitch.empty() || !yaw.empty()) fail(line, "breakpoint tables need a disturbance kind");
    s.disturbance = sim::no_disturbance();
    return;
  }
  s.disturbance.kind = kind;
  s.disturbance.pitch = std::move(pitch);
  s.disturbance.yaw = std::move(yaw);
  s.disturbance.seed = s.cert.seed;
  try {
    s.disturbance.validate();
  } catch (const std::exception& ex) {
    fail(line, ex.what());
  }
}

void Builder::build_outputs(Scenario& s) {
  if (const auto e = take("outputs")) {
    s.outputs.clear();
    if (lower(trim(e->value)) == "none") return;
    for (std::string_view item : split(e->value, ',')) {
      const std::string v = lower(item);
      Output o;
      if (v == "trace_csv") {
        o = Output::kTraceCsv;
      } else if (v == "plot_svg") {
        o = Output::kPlotSvg;
      } else if (v == "certificate_report") {
        o = Output::kCertificateReport;
      } else {
        fail(*e, "outputs", "unknown output '" + std::string(item) + "'");
      }
      if (std::find(s.outputs.begin(), s.outputs.end(), o) == s.outputs.end()) s.outputs.push_back(o);
    }
  }
  if (const auto e = keys_.find("cert_trajectories"); e != keys_.end()) {
    const Entry entry = e->second;
    const double v = *number("cert_trajectories");
    if (v != std::floor(v) || v < 0.0 || v > 1e7) fail(entry, "cert_trajectories", "must be a non-negative integer");
    s.cert.trajectories = static_cast<int>(v);
  }
  for (const auto& [key, target] : {std::pair<const char*, double*>{"cert_horizon", &s.cert.horizon_s},
                                    {"cert_dt", &s.cert.dt},
                                    {"cert_z0_fraction", &s.cert.z0_fraction}}) {
    if (const auto e = keys_.find(key); e != keys_.end()) {
      const Entry entry = e->second;
      const double v = *number(key);
      if (!(v > 0.0)) fail(entry, key, "must be positive");
      *target = v;
    }
  }
  if (s.cert.z0_fraction > 1.0) fail(section_.line, "cert_z0_fraction must not exceed 1");
  if (s.cert.horizon_s <= 10.0 * s.cert.dt) fail(section_.line, "cert_horizon must span many cert_dt steps");
}

Scenario Builder::build(std::vector<std::string>& warnings) {
  Scenario s;
  s.name = section_.name;
  s.line = section_.line;
  build_params(s);
  build_gains(s);
  build_runtime(s);
  build_disturbance(s);
  build_outputs(s);
  if (!keys_.empty()) {
    const auto first = std::min_element(keys_.begin(), keys_.end(), [](const auto& a, const auto& b) {
      return a.second.line < b.second.line;
    });
    fail(first->second.line, "unknown key '" + first->first + "'");
  }
  if (s.runtime.map_pitch.is_identity() || s.runtime.map_yaw.is_identity()) {
    warnings.push_back(source_ + ": scenario '" + s.name +
                       "': identity torque-to-voltage map, voltage columns equal torques");
  }
  return s;
}

}  // namespace

ConfigError::ConfigError(const std::string& source, int line, const std::string& message)
    : std::runtime_error(source + ":" + std::to_string(line) + ": " + message), line_(line) {}

bool Scenario::wants(Output o) const {
  return std::find(outputs.begin(), outputs.end(), o) != outputs.end();
}

void Scenario::reseed(std::uint64_t seed) {
  cert.seed = seed;
  disturbance.seed = seed;
  if (random_disturbance) {
    disturbance = sim::make_piecewise_disturbance(seed, random_dwell, random_amplitude,
                                                  runtime.t_end, random_axes);
  }
}

Batch parse_config(std::istream& in, const std::string& source_name,
                   const std::filesystem::path& base_dir) {
  std::optional<Section> defaults;
  std::vector<Section> scenarios;
  Section* current = nullptr;
  std::set<std::string> names;

  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    line = trim(line);
    if (line.empty() || line.front() == '#' || line.front() == ';') continue;
    if (const auto hash = line.find(" #"); hash != std::string_view::npos) {
      line = trim(line.substr(0, hash));
    }

    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(source_name, line_no, "unterminated section header");
      const std::string_view inner = trim(line.substr(1, line.size() - 2));
      if (inner == "defaults") {
        if (defaults) throw ConfigError(source_name, line_no, "second [defaults] section");
        if (!scenarios.empty()) {
          throw ConfigError(source_name, line_no, "[defaults] must precede every scenario");
        }
        defaults = Section{"", line_no, {}};
        current = &*defaults;
        continue;
      }
      constexpr std::string_view kPrefix = "scenario";
      if (inner.substr(0, kPrefix.size()) != kPrefix ||
          (inner.size() > kPrefix.size() &&
           !std::isspace(static_cast<unsigned char>(inner[kPrefix.size()])))) {
        throw ConfigError(source_name, line_no,
                          "unknown section '" + std::string(inner) + "' (expected [defaults] or [scenario NAME])");
      }
      const std::string name(trim(inner.substr(kPrefix.size())));
      if (!valid_name(name)) {
        throw ConfigError(source_name, line_no,
                          "scenario name '" + name + "' must use letters, digits, '_', '-' or '.'");
      }
      if (!names.insert(name).second) {
        throw ConfigError(source_name, line_no, "duplicate scenario name '" + name + "'");
      }
      scenarios.push_back(Section{name, line_no, {}});
      current = &scenarios.back();
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(source_name, line_no, "expected key = value");
    }
    if (current == nullptr) {
      throw ConfigError(source_name, line_no, "key outside of any section");
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) throw ConfigError(source_name, line_no, "empty key");
    if (!current->keys.emplace(key, Entry{value, line_no}).second) {
      throw ConfigError(source_name, line_no, "duplicate key '" + key + "'");
    }
  }

  Batch batch;
  for (const Section& sc : scenarios) {
    Section merged = sc;
    if (defaults) {
      for (const auto& [k, e] : defaults->keys) merged.keys.emplace(k, e);
    }
    batch.scenarios.push_back(Builder(source_name, merged, base_dir).build(batch.warnings));
  }
  return batch;
}

Batch load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config '" + path.string() + "'");
  return parse_config(in, path.string(), path.parent_path());
}

}  // namespace helictl::cli
