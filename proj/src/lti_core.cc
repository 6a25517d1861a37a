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

#include "helictl/lti_core.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace helictl::lti {
namespace {

constexpr int kAberthMaxIterations = 200;
constexpr double kAberthStepTolerance = 1e-13;
constexpr double kRootResidualTolerance = 1e-8;
constexpr double kConjugatePairTolerance = 1e-6;

bool all_finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(),
                     [](double x) { return std::isfinite(x); });
}

struct HornerResult {
  std::complex<double> value;
  std::complex<double> derivative;
  // Σ|cᵢ|·|z|ⁱ, the scale of the rounding error in `value`.
  double magnitude;
};

HornerResult horner(std::span<const double> c, std::complex<double> z) {
  const double r = std::abs(z);
  std::complex<double> p = c.back();
  std::complex<double> dp = 0.0;
  double mag = std::abs(c.back());
  for (int i = static_cast<int>(c.size()) - 2; i >= 0; --i) {
    dp = dp * z + p;
    p = p * z + c[static_cast<std::size_t>(i)];
    mag = mag * r + std::abs(c[static_cast<std::size_t>(i)]);
  }
  return {p, dp, mag};
}

}  // namespace

PlantCoeffs::PlantCoeffs(std::vector<double> a) : a_(std::move(a)) {
  if (a_.empty()) {
    throw std::invalid_argument("plant order must be at least 1");
  }
  if (!all_finite(a_)) {
    throw std::invalid_argument("plant coefficients must be finite");
  }
}

CharPoly::CharPoly(std::vector<double> ascending_coeffs)
    : c_(std::move(ascending_coeffs)) {
  if (c_.size() < 2) {
    throw std::invalid_argument("polynomial degree must be at least 1");
  }
  if (!all_finite(c_)) {
    throw std::invalid_argument("polynomial coefficients must be finite");
  }
  const double lead = c_.back();
  if (lead == 0.0) {
    throw std::invalid_argument("leading coefficient is zero");
  }
  if (lead != 1.0) {
    for (double& x : c_) x /= lead;
    c_.back() = 1.0;
  }
}

std::complex<double> CharPoly::evaluate(std::complex<double> s) const {
  return horner(c_, s).value;
}

double CharPoly::max_abs_coeff() const {
  double m = 0.0;
  for (double x : c_) m = std::max(m, std::abs(x));
  return m;
}

CharPoly multiply(const CharPoly& lhs, const CharPoly& rhs) {
  std::vector<double> out(lhs.coeffs().size() + rhs.coeffs().size() - 1, 0.0);
  for (std::size_t i = 0; i < lhs.coeffs().size(); ++i) {
    for (std::size_t j = 0; j < rhs.coeffs().size(); ++j) {
      out[i + j] += lhs.coeffs()[i] * rhs.coeffs()[j];
    }
  }
  return CharPoly(std::move(out));
}

CharPoly from_roots(std::span<const std::complex<double>> roots) {
  if (roots.empty()) {
    throw std::invalid_argument("from_roots needs at least one root");
  }
  std::vector<std::complex<double>> c{1.0};
  for (const auto& r : roots) {
    std::vector<std::complex<double>> next(c.size() + 1, 0.0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= r * c[i];
    }
    c = std::move(next);
  }
  std::vector<double> real(c.size());
  std::transform(c.begin(), c.end(), real.begin(),
                 [](std::complex<double> z) { return z.real(); });
  return CharPoly(std::move(real));
}

CharPoly closed_loop_charpoly(const PlantCoeffs& plant,
                              const ControllerGains& gains) {
  if (gains.order() != plant.order()) {
    std::ostringstream msg;
    msg << "plant order " << plant.order() << " but " << gains.order()
        << " state gains";
    throw DimensionMismatch(msg.str());
  }
  const int n = plant.order();
  std::vector<double> c(static_cast<std::size_t>(n) + 2);
  c[0] = gains.b0;
  for (int i = 1; i <= n; ++i) {
    c[static_cast<std::size_t>(i)] = plant.a(i) + gains.b[static_cast<std::size_t>(i - 1)];
  }
  c.back() = 1.0;
  return CharPoly(std::move(c));
}

std::vector<std::complex<double>> poly_roots(const CharPoly& p) {
  const auto c = p.coeffs();
  const int n = p.degree();

  double cauchy = 0.0;
  for (int i = 0; i < n; ++i) cauchy = std::max(cauchy, std::abs(c[static_cast<std::size_t>(i)]));
  const double radius = 1.0 + cauchy;

  std::vector<std::complex<double>> z(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    // Offset angle keeps the start off the real axis for real polynomials.
    const double angle = 2.0 * std::numbers::pi * k / n + 0.4;
    z[static_cast<std::size_t>(k)] = std::polar(radius, angle);
  }

  std::vector<bool> done(static_cast<std::size_t>(n), false);
  constexpr double eps = std::numeric_limits<double>::epsilon();
  bool converged = false;
  for (int iter = 0; iter < kAberthMaxIterations && !converged; ++iter) {
    converged = true;
    for (std::size_t k = 0; k < z.size(); ++k) {
      if (done[k]) continue;
      const HornerResult h = horner(c, z[k]);
      if (std::abs(h.value) <= 8.0 * eps * h.magnitude) {
        done[k] = true;
        continue;
      }
      std::complex<double> ratio =
          h.derivative == 0.0 ? std::complex<double>(1e-8, 1e-8)
                              : h.value / h.derivative;
      std::complex<double> repulsion = 0.0;
      for (std::size_t j = 0; j < z.size(); ++j) {
        if (j != k && z[j] != z[k]) repulsion += 1.0 / (z[k] - z[j]);
      }
      const std::complex<double> denom = 1.0 - ratio * repulsion;
      const std::complex<double> step = denom == 0.0 ? ratio : ratio / denom;
      z[k] -= step;
      if (std::abs(step) < kAberthStepTolerance * std::max(1.0, std::abs(z[k]))) {
        done[k] = true;
      } else {
        converged = false;
      }
    }
  }

  std::vector<double> residuals(z.size());
  for (std::size_t k = 0; k < z.size(); ++k) residuals[k] = std::abs(p.evaluate(z[k]));
  if (!converged) {
    throw RootFindingError("Aberth iteration did not converge in " +
                               std::to_string(kAberthMaxIterations) +
                               " iterations",
                           std::move(residuals));
  }
  const double limit = kRootResidualTolerance * p.max_abs_coeff();
  if (std::any_of(residuals.begin(), residuals.end(),
                  [limit](double r) { return r > limit; })) {
    throw RootFindingError("root residual above tolerance", std::move(residuals));
  }

  // Real coefficients: pair each root with its nearest conjugate partner.
  std::vector<bool> paired(z.size(), false);
  for (std::size_t k = 0; k < z.size(); ++k) {
    if (paired[k] || z[k].imag() == 0.0) continue;
    std::size_t best = k;
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < z.size(); ++j) {
      if (j == k || paired[j] || (z[j].imag() > 0.0) == (z[k].imag() > 0.0)) continue;
      const double d = std::abs(z[j] - std::conj(z[k]));
      if (d < best_dist) {
        best_dist = d;
        best = j;
      }
    }
    if (best == k || best_dist > kConjugatePairTolerance * std::max(1.0, std::abs(z[k]))) continue;
    const double re = 0.5 * (z[k].real() + z[best].real());
    const double im = 0.5 * (std::abs(z[k].imag()) + std::abs(z[best].imag()));
    z[k] = {re, std::copysign(im, z[k].imag())};
    z[best] = std::conj(z[k]);
    paired[k] = paired[best] = true;
  }

  std::sort(z.begin(), z.end(), [](auto lhs, auto rhs) {
    if (lhs.real() != rhs.real()) return lhs.real() > rhs.real();
    return lhs.imag() > rhs.imag();
  });
  return z;
}

Stability classify_stability(const CharPoly& p) {
  Stability worst = Stability::kStable;
  for (const auto& r : poly_roots(p)) {
    if (r.real() > kMarginalBand) return Stability::kUnstable;
    if (r.real() >= -kMarginalBand) worst = Stability::kMarginal;
  }
  return worst;
}

bool is_hurwitz(const CharPoly& p) {
  return classify_stability(p) == Stability::kStable;
}

double step_disturbance_final_value(const PlantCoeffs& plant,
                                    const ControllerGains& gains, double x_d) {
  if (gains.b0 == 0.0) {
    throw FinalValueError(
        "final value theorem inapplicable: b0 = 0 leaves a pole at the origin");
  }
  const CharPoly den = closed_loop_charpoly(plant, gains);
  if (!is_hurwitz(den)) {
    throw FinalValueError(
        "final value theorem inapplicable: closed loop is not Hurwitz");
  }
  // s·X(s) = (s + b₀·x_d) / D(s) → b₀·x_d / D(0).
  return gains.b0 * x_d / den[0];
}

}  // namespace helictl::lti
