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
/// Monic nth-order LTI plants driven by an integral-plus-derivatives state
/// feedback law, and the closed-loop characteristic polynomial algebra that
/// goes with them.
///
/// Plant:      x⁽ⁿ⁾ + Σᵢ aᵢ·x⁽ⁱ⁻¹⁾ = u + T
/// Controller: u = b₀·∫y + Σᵢ bᵢ·y⁽ⁱ⁻¹⁾,   y = x_d − x
/// Closed loop denominator: sⁿ⁺¹ + Σᵢ (aᵢ + bᵢ)·sⁱ + b₀

#include <complex>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace helictl::lti {

/// Coefficients a₁..aₙ of a monic nth-order plant; aᵢ multiplies x⁽ⁱ⁻¹⁾.
class PlantCoeffs {
 public:
  explicit PlantCoeffs(std::vector<double> a);

  int order() const { return static_cast<int>(a_.size()); }
  std::span<const double> a() const { return a_; }
  /// One-based access matching the aᵢ numbering.
  double a(int i) const { return a_.at(static_cast<std::size_t>(i - 1)); }

 private:
  std::vector<double> a_;
};

/// Integral gain b₀ plus state gains b₁..bₙ (b₁ proportional, the rest
/// derivative gains of increasing order).
struct ControllerGains {
  double b0 = 0.0;
  std::vector<double> b;

  int order() const { return static_cast<int>(b.size()); }
};

/// Real polynomial stored densely in ascending powers and normalised to be
/// monic. Construction divides through by the leading coefficient only when
/// it is not already exactly one, so already-monic input is stored verbatim.
class CharPoly {
 public:
  explicit CharPoly(std::vector<double> ascending_coeffs);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  std::span<const double> coeffs() const { return c_; }
  double operator[](int power) const { return c_.at(static_cast<std::size_t>(power)); }

  std::complex<double> evaluate(std::complex<double> s) const;
  double max_abs_coeff() const;

  friend bool operator==(const CharPoly&, const CharPoly&) = default;

 private:
  std::vector<double> c_;
};

/// Product of two monic polynomials (monic again).
CharPoly multiply(const CharPoly& lhs, const CharPoly& rhs);

/// Builds the monic polynomial Π (s − rᵢ) from roots that are closed under
/// conjugation. Imaginary round-off in the expanded coefficients is dropped.
CharPoly from_roots(std::span<const std::complex<double>> roots);

/// Thrown when the plant and the gains disagree on the order n.
class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class RootFindingError : public std::runtime_error {
 public:
  RootFindingError(const std::string& what, std::vector<double> residuals)
      : std::runtime_error(what), residuals_(std::move(residuals)) {}

  /// |p(z)| at every approximation when the iteration gave up.
  const std::vector<double>& residuals() const { return residuals_; }

 private:
  std::vector<double> residuals_;
};

class FinalValueError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

CharPoly closed_loop_charpoly(const PlantCoeffs& plant,
                              const ControllerGains& gains);

/// All complex roots via Aberth–Ehrlich simultaneous iteration, started on a
/// circle of the Cauchy radius. Sorted by descending real part, then by
/// descending imaginary part.
std::vector<std::complex<double>> poly_roots(const CharPoly& p);

enum class Stability { kStable, kMarginal, kUnstable };

/// Real parts below −1e-12 count as stable, above +1e-12 as unstable.
/// Anything in between is marginal.
inline constexpr double kMarginalBand = 1e-12;

Stability classify_stability(const CharPoly& p);
bool is_hurwitz(const CharPoly& p);

/// Steady state of x for a unit step disturbance at the plant input with
/// setpoint x_d, from lim s→0 of s·X(s). Requires b₀ ≠ 0 and a Hurwitz
/// closed loop.
double step_disturbance_final_value(const PlantCoeffs& plant,
                                    const ControllerGains& gains, double x_d);

}  // namespace helictl::lti
