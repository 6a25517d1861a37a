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
/// Minimal static SVG line charts: axes, ticks, legend, one polyline per
/// series and horizontal reference lines.

#include <cstddef>
#include <string>
#include <vector>

namespace helictl::cli {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  std::string color = "#1f77b4";
};

struct ReferenceLine {
  std::string label;
  double y = 0.0;
  std::string color = "#d62728";
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
  std::vector<ReferenceLine> references;
  int width = 800;
  int height = 480;
  /// Series longer than this are reduced to per-bucket min/max pairs.
  std::size_t max_points = 4000;
};

/// Round tick positions covering [lo, hi], roughly `target` of them.
std::vector<double> nice_ticks(double lo, double hi, int target = 6);

/// Keeps first and last samples and, per bucket, the extreme values in
/// time order.
void decimate(const std::vector<double>& x, const std::vector<double>& y,
              std::size_t max_points, std::vector<double>& out_x,
              std::vector<double>& out_y);

std::string render_svg(const PlotSpec& spec);

std::string xml_escape(const std::string& text);

}  // namespace helictl::cli
