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

#include "helictl/svg_plot.h"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace helictl::cli {
namespace {

std::string fixed(double v, int digits = 2) {
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  std::array<char, 64> buf{};
  const auto r = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                               std::chars_format::fixed, digits);
  return std::string(buf.data(), r.ptr);
}

std::string tick_label(double v, double step) {
  int digits = 0;
  if (step < 1.0) digits = std::min(6, static_cast<int>(std::ceil(-std::log10(step) - 1e-9)));
  return fixed(v, digits);
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void finish() {
    if (!(lo <= hi)) {
      lo = 0.0;
      hi = 1.0;
    }
    if (hi - lo < 1e-12 * std::max(1.0, std::abs(lo))) {
      const double pad = std::max(1.0, std::abs(lo)) * 0.5;
      lo -= pad;
      hi += pad;
    }
  }
};

}  // namespace

std::string xml_escape(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::vector<double> nice_ticks(double lo, double hi, int target) {
  if (!(hi > lo) || !std::isfinite(lo) || !std::isfinite(hi) || target < 2) {
    throw std::invalid_argument("nice_ticks needs a finite range lo < hi");
  }
  const double raw = (hi - lo) / static_cast<double>(target - 1);
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = 10.0 * mag;
  for (double m : {1.0, 2.0, 2.5, 5.0, 10.0}) {
    if (m * mag >= raw) {
      step = m * mag;
      break;
    }
  }
  std::vector<double> ticks;
  const double first = std::ceil(lo / step - 1e-9) * step;
  for (int i = 0;; ++i) {
    const double t = first + i * step;
    if (t > hi + 1e-9 * step) break;
    ticks.push_back(std::abs(t) < 1e-12 * step ? 0.0 : t);
  }
  return ticks;
}

void decimate(const std::vector<double>& x, const std::vector<double>& y,
              std::size_t max_points, std::vector<double>& out_x,
              std::vector<double>& out_y) {
  if (x.size() != y.size()) throw std::invalid_argument("series x and y lengths differ");
  out_x.clear();
  out_y.clear();
  if (x.size() <= max_points || max_points < 4) {
    out_x = x;
    out_y = y;
    return;
  }
  const std::size_t buckets = (max_points - 2) / 2;
  const std::size_t inner = x.size() - 2;
  out_x.push_back(x.front());
  out_y.push_back(y.front());
  for (std::size_t b = 0; b < buckets; ++b) {
    const std::size_t begin = 1 + b * inner / buckets;
    const std::size_t end = 1 + (b + 1) * inner / buckets;
    if (begin >= end) continue;
    std::size_t imin = begin;
    std::size_t imax = begin;
    for (std::size_t i = begin; i < end; ++i) {
      if (y[i] < y[imin]) imin = i;
      if (y[i] > y[imax]) imax = i;
    }
    const std::size_t a = std::min(imin, imax);
    const std::size_t c = std::max(imin, imax);
    out_x.push_back(x[a]);
    out_y.push_back(y[a]);
    if (c != a) {
      out_x.push_back(x[c]);
      out_y.push_back(y[c]);
    }
  }
  out_x.push_back(x.back());
  out_y.push_back(y.back());
}

std::string render_svg(const PlotSpec& spec) {
  const double left = 80.0, right = 170.0, top = 40.0, bottom = 60.0;
  const double w = spec.width, h = spec.height;
  const double pw = w - left - right;
  const double ph = h - top - bottom;
  if (!(pw > 10.0) || !(ph > 10.0)) throw std::invalid_argument("plot area too small");

  Range xr, yr;
  for (const Series& s : spec.series) {
    for (double v : s.x) xr.add(v);
    for (double v : s.y) yr.add(v);
  }
  for (const ReferenceLine& r : spec.references) yr.add(r.y);
  xr.finish();
  const double ypad = 0.05 * (yr.hi - yr.lo);
  yr.lo -= ypad;
  yr.hi += ypad;
  yr.finish();

  const std::vector<double> xt = nice_ticks(xr.lo, xr.hi);
  const std::vector<double> yt = nice_ticks(yr.lo, yr.hi);
  xr.lo = std::min(xr.lo, xt.front());
  xr.hi = std::max(xr.hi, xt.back());
  yr.lo = std::min(yr.lo, yt.front());
  yr.hi = std::max(yr.hi, yt.back());
  const double xstep = xt.size() > 1 ? xt[1] - xt[0] : 1.0;
  const double ystep = yt.size() > 1 ? yt[1] - yt[0] : 1.0;

  auto px = [&](double v) { return left + (v - xr.lo) / (xr.hi - xr.lo) * pw; };
  auto py = [&](double v) { return top + (yr.hi - v) / (yr.hi - yr.lo) * ph; };

  std::string o;
  o += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  o += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fixed(w, 0) + "\" height=\"" +
       fixed(h, 0) + "\" viewBox=\"0 0 " + fixed(w, 0) + " " + fixed(h, 0) +
       "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  o += "<rect x=\"0\" y=\"0\" width=\"" + fixed(w, 0) + "\" height=\"" + fixed(h, 0) +
       "\" fill=\"white\"/>\n";
  o += "<text x=\"" + fixed(left + pw / 2) + "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" +
       xml_escape(spec.title) + "</text>\n";

  o += "<g stroke=\"#dddddd\" stroke-width=\"1\">\n";
  for (double t : xt) {
    o += "<line x1=\"" + fixed(px(t)) + "\" y1=\"" + fixed(top) + "\" x2=\"" + fixed(px(t)) +
         "\" y2=\"" + fixed(top + ph) + "\"/>\n";
  }
  for (double t : yt) {
    o += "<line x1=\"" + fixed(left) + "\" y1=\"" + fixed(py(t)) + "\" x2=\"" + fixed(left + pw) +
         "\" y2=\"" + fixed(py(t)) + "\"/>\n";
  }
  o += "</g>\n";
  o += "<rect x=\"" + fixed(left) + "\" y=\"" + fixed(top) + "\" width=\"" + fixed(pw) +
       "\" height=\"" + fixed(ph) + "\" fill=\"none\" stroke=\"black\"/>\n";
  o += "<g text-anchor=\"middle\">\n";
  for (double t : xt) {
    o += "<text x=\"" + fixed(px(t)) + "\" y=\"" + fixed(top + ph + 18) + "\">" +
         tick_label(t, xstep) + "</text>\n";
  }
  o += "</g>\n<g text-anchor=\"end\">\n";
  for (double t : yt) {
    o += "<text x=\"" + fixed(left - 6) + "\" y=\"" + fixed(py(t) + 4) + "\">" +
         tick_label(t, ystep) + "</text>\n";
  }
  o += "</g>\n";
  o += "<text x=\"" + fixed(left + pw / 2) + "\" y=\"" + fixed(h - 16) +
       "\" text-anchor=\"middle\">" + xml_escape(spec.x_label) + "</text>\n";
  o += "<text x=\"18\" y=\"" + fixed(top + ph / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " +
       fixed(top + ph / 2) + ")\">" + xml_escape(spec.y_label) + "</text>\n";

  for (const ReferenceLine& r : spec.references) {
    o += "<line class=\"reference\" x1=\"" + fixed(left) + "\" y1=\"" + fixed(py(r.y)) + "\" x2=\"" +
         fixed(left + pw) + "\" y2=\"" + fixed(py(r.y)) + "\" stroke=\"" + xml_escape(r.color) +
         "\" stroke-width=\"1\" stroke-dasharray=\"6 4\"/>\n";
  }

  std::vector<double> dx, dy;
  for (const Series& s : spec.series) {
    decimate(s.x, s.y, spec.max_points, dx, dy);
    o += "<polyline fill=\"none\" stroke=\"" + xml_escape(s.color) +
         "\" stroke-width=\"1.5\" points=\"";
    bool first = true;
    for (std::size_t i = 0; i < dx.size(); ++i) {
      if (!std::isfinite(dx[i]) || !std::isfinite(dy[i])) continue;
      if (!first) o += ' ';
      first = false;
      o += fixed(px(dx[i])) + "," + fixed(py(dy[i]));
    }
    o += "\"/>\n";
  }

  double ly = top + 10.0;
  const double lx = left + pw + 14.0;
  for (const Series& s : spec.series) {
    o += "<line x1=\"" + fixed(lx) + "\" y1=\"" + fixed(ly) + "\" x2=\"" + fixed(lx + 24) + "\" y2=\"" +
         fixed(ly) + "\" stroke=\"" + xml_escape(s.color) + "\" stroke-width=\"2\"/>\n";
    o += "<text x=\"" + fixed(lx + 30) + "\" y=\"" + fixed(ly + 4) + "\">" + xml_escape(s.label) +
         "</text>\n";
    ly += 20.0;
  }
  for (const ReferenceLine& r : spec.references) {
    if (r.label.empty()) continue;
    o += "<line x1=\"" + fixed(lx) + "\" y1=\"" + fixed(ly) + "\" x2=\"" + fixed(lx + 24) + "\" y2=\"" +
         fixed(ly) + "\" stroke=\"" + xml_escape(r.color) + "\" stroke-dasharray=\"6 4\"/>\n";
    o += "<text x=\"" + fixed(lx + 30) + "\" y=\"" + fixed(ly + 4) + "\">" + xml_escape(r.label) +
         "</text>\n";
    ly += 20.0;
  }
  o += "</svg>\n";
  return o;
}

}  // namespace helictl::cli
