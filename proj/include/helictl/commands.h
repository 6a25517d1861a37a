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
/// Subcommand bodies of the `helictl` executable.
///
/// Exit codes: 0 success, 1 I/O failure, 2 usage or config error,
/// 3 simulation divergence, 4 unstable or non-diagonalizable loop.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace helictl::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitDiverged = 3;
inline constexpr int kExitUnstable = 4;

enum class ArtifactFormat { kCsv, kSvg, kBoth };

struct CommonOptions {
  std::filesystem::path out_dir = "out";
  std::optional<std::uint64_t> seed;
  ArtifactFormat format = ArtifactFormat::kBoth;
};

struct DesignOptions {
  std::optional<double> overshoot;
  std::optional<double> settling;
  double band = 0.02;
  double ratio = 5.0;
  /// Ascending plant coefficients a₁..aₙ; defaults to a double integrator.
  std::vector<double> plant;
  /// "pitch" or "yaw": also print k-lines for a scenario file.
  std::optional<std::string> snippet;
};

std::string design_usage();

int cmd_simulate(const std::filesystem::path& config, const CommonOptions& options,
                 std::ostream& out, std::ostream& err);

int cmd_design(const DesignOptions& options, std::ostream& out, std::ostream& err);

int cmd_certify(const std::filesystem::path& config, const CommonOptions& options,
                std::ostream& out, std::ostream& err);

}  // namespace helictl::cli
