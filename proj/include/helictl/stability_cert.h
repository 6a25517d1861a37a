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
/// Executable boundedness and convergence certificates for the closed-loop
/// helicopter in error coordinates, Ż = A·Z + N(Z).
///
/// With A = M·Σ·M⁻¹ and β = ‖M‖·‖M⁻¹‖, ‖e^{At}‖ ≤ β·e^{Re λ₁·t}, where λ₁ is
/// the eigenvalue with the largest real part. If ‖N(Z)‖ ≤ κ‖Z‖², any γ > 0
/// with β‖Z(0)‖ + β·κ·γ²/|λ₁| ≤ γ bounds ‖Z(t)‖ for all t.

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>

#include "helictl/heli_dynamics.h"
#include "helictl/trace.h"

namespace helictl::cert {

inline constexpr double kEigenGapTolerance = 1e-8;
inline constexpr double kDecompositionTolerance = 1e-8;

struct EigenDecomposition {
  /// Sorted by descending real part, then descending imaginary part.
  Eigen::VectorXcd eigenvalues;
  /// Unit-norm eigenvectors as columns, in eigenvalue order.
  Eigen::MatrixXcd M;
  Eigen::MatrixXcd M_inv;
  /// ‖A − M·Σ·M⁻¹‖₂ / ‖A‖₂
  double relative_residual = 0.0;
};

class NotDiagonalizableError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class UnstableSystemError : public std::domain_error {
 public:
  UnstableSystemError(const std::string& what, Eigen::VectorXcd eigenvalues)
      : std::domain_error(what), eigenvalues_(std::move(eigenvalues)) {}
  const Eigen::VectorXcd& eigenvalues() const { return eigenvalues_; }

 private:
  Eigen::VectorXcd eigenvalues_;
};

EigenDecomposition eigen_decompose(const Eigen::MatrixXd& A);

/// Induced 2-norm by power iteration on the Gram matrix MᴴM.
double spectral_norm(const Eigen::MatrixXcd& M);

/// β = ‖M‖₂·‖M⁻¹‖₂, never below one.
double beta(const Eigen::MatrixXcd& M, const Eigen::MatrixXcd& M_inv);

/// κ² = (α₁mgl/2 + 2α₁ml²θ_d + α₁ml²θ_d²)² + (3α₂ml² + 2α₂ml²θ_d + α₂ml²θ_d²)²
double kappa(const heli::HeliParams& p, double theta_d);

struct GammaSolution {
  bool feasible = false;
  /// Smallest γ satisfying the bound; meaningful only when feasible.
  double gamma = 0.0;
  /// Largest admissible initial norm, |λ₁| / (4β²κ).
  double z0_max = 0.0;
};

GammaSolution solve_gamma(double beta, double kappa, double lambda1_abs,
                          double z0_norm);

/// (e^{λt} − 1)/λ = ∫₀ᵗ e^{λ(t−τ)} dτ; tends to 1/|λ| for λ < 0.
double decay_integral(double lambda, double t);

struct Certificate {
  Eigen::VectorXcd eigenvalues;
  double beta = 1.0;
  double kappa = 0.0;
  /// Real part of the slowest eigenvalue (negative).
  double lambda1 = 0.0;
  /// State-norm bound for initial norms up to z0_max.
  double gamma = 0.0;
  double z0_max = 0.0;

  /// β·z0_max + β·κ·γ²/|λ₁| − γ; at most rounding above zero.
  double bound_residual() const;
  /// γ for a specific initial norm, or nullopt beyond z0_max.
  std::optional<double> gamma_for(double z0_norm) const;
};

/// Throws NotDiagonalizableError or UnstableSystemError.
Certificate build_certificate(const Eigen::MatrixXd& A,
                              const heli::HeliParams& p, double theta_d);

struct BoundednessEntry {
  double z0_norm = 0.0;
  double max_norm = 0.0;
  /// Bound for this trajectory's own initial norm.
  double gamma = 0.0;
  bool rejected = false;
  bool pass = false;
};

struct BoundednessReport {
  std::vector<BoundednessEntry> entries;
  std::size_t rejected = 0;
  std::size_t failures = 0;
  /// Smallest γ − max‖Z‖ over accepted trajectories.
  double worst_margin = 0.0;
  bool pass = false;
};

/// One trajectory against the certificate. Trajectories whose initial norm
/// exceeds z0_max are rejected inputs, not failures.
BoundednessEntry check_boundedness(const Certificate& cert,
                                   const sim::SimTrace& trace);

BoundednessReport summarize_boundedness(std::vector<BoundednessEntry> entries);

BoundednessReport verify_boundedness(const Certificate& cert,
                                     std::span<const sim::SimTrace> trajectories);

struct ConvergenceOptions {
  double t0 = 5.0;        // lag between the compared instants
  double horizon = 60.0;  // last instant used is t2 + t0 ≤ horizon
  double grid_step = 1.0;
  double tolerance = 1e-4;
  /// Differences at or below this are treated as converged round-off.
  double noise_floor = 1e-12;
  /// Re λ of the slowest mode; enables the exponential envelope check.
  std::optional<double> lambda_max;
};

struct ConvergenceReport {
  std::vector<double> t2;
  std::vector<double> d;
  /// First grid index from which d never increases.
  std::size_t monotone_from = 0;
  bool eventually_monotone = false;
  double d_final = 0.0;
  /// −slope of a least-squares fit of ln d against t2, over points above the
  /// noise floor; NaN with fewer than three such points.
  double fitted_rate = 0.0;
  double envelope_C = 0.0;
  bool envelope_ok = true;
  bool pass = false;
};

/// Cauchy-style check on d(t2) = ‖Z(t2 + t0) − Z(t2)‖.
ConvergenceReport verify_convergence(const sim::SimTrace& trace,
                                     const ConvergenceOptions& options);

/// Value of d at the grid point nearest to t2.
double difference_at(const ConvergenceReport& report, double t2);

}  // namespace helictl::cert
