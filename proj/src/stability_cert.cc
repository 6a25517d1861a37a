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

#include "helictl/stability_cert.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

namespace helictl::cert {
namespace {

constexpr int kPowerIterationCap = 10000;
constexpr double kPowerIterationTolerance = 1e-12;

std::string format_eigenvalues(const Eigen::VectorXcd& ev) {
  std::ostringstream s;
  s.precision(10);
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (i > 0) s << ", ";
    s << ev(i).real() << (ev(i).imag() < 0 ? "-" : "+") << std::abs(ev(i).imag()) << "i";
  }
  return s.str();
}

}  // namespace

double spectral_norm(const Eigen::MatrixXcd& M) {
  if (M.size() == 0 || M.cwiseAbs().maxCoeff() == 0.0) return 0.0;
  const Eigen::MatrixXcd gram = M.adjoint() * M;
  const Eigen::Index n = gram.rows();
  Eigen::VectorXcd v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    v(i) = std::complex<double>(1.0 + 0.1 * static_cast<double>(i),
                                0.01 * static_cast<double>(i));
  }
  v.normalize();
  double estimate = 0.0;
  for (int iter = 0; iter < kPowerIterationCap; ++iter) {
    Eigen::VectorXcd w = gram * v;
    const double wn = w.norm();
    if (wn == 0.0) break;
    v = w / wn;
    const double next = (v.adjoint() * gram * v)(0).real();
    const bool done = std::abs(next - estimate) <= kPowerIterationTolerance * next;
    estimate = next;
    if (done) break;
  }
  return std::sqrt(estimate);
}

EigenDecomposition eigen_decompose(const Eigen::MatrixXd& A) {
  if (A.rows() != A.cols() || A.rows() == 0) {
    throw std::invalid_argument("eigen_decompose needs a non-empty square matrix");
  }
  Eigen::EigenSolver<Eigen::MatrixXd> solver(A, /*computeEigenvectors=*/true);
  if (solver.info() != Eigen::Success) {
    throw NotDiagonalizableError("eigenvalue iteration failed");
  }
  const Eigen::Index n = A.rows();
  const Eigen::VectorXcd raw_values = solver.eigenvalues();
  const Eigen::MatrixXcd raw_vectors = solver.eigenvectors();

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    const auto la = raw_values(a);
    const auto lb = raw_values(b);
    if (la.real() != lb.real()) return la.real() > lb.real();
    return la.imag() > lb.imag();
  });

  EigenDecomposition out;
  out.eigenvalues.resize(n);
  out.M.resize(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const Eigen::Index src = order[static_cast<std::size_t>(j)];
    out.eigenvalues(j) = raw_values(src);
    out.M.col(j) = raw_vectors.col(src).normalized();
  }

  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (std::abs(out.eigenvalues(i) - out.eigenvalues(j)) < kEigenGapTolerance) {
        throw NotDiagonalizableError(
            "certificate requires diagonalizable A; perturb gains "
            "(eigenvalues closer than 1e-8: " +
            format_eigenvalues(out.eigenvalues) + ")");
      }
    }
  }

  const Eigen::FullPivLU<Eigen::MatrixXcd> lu(out.M);
  if (!lu.isInvertible()) {
    throw NotDiagonalizableError(
        "certificate requires diagonalizable A; perturb gains (singular eigenvector matrix)");
  }
  out.M_inv = lu.inverse();

  const Eigen::MatrixXcd reconstructed =
      out.M * out.eigenvalues.asDiagonal() * out.M_inv;
  const double a_norm = spectral_norm(A.cast<std::complex<double>>());
  const double res = spectral_norm(A.cast<std::complex<double>>() - reconstructed);
  out.relative_residual = a_norm > 0.0 ? res / a_norm : res;
  if (out.relative_residual > kDecompositionTolerance) {
    throw NotDiagonalizableError(
        "certificate requires diagonalizable A; perturb gains (reconstruction residual " +
        std::to_string(out.relative_residual) + ")");
  }
  return out;
}

double beta(const Eigen::MatrixXcd& M, const Eigen::MatrixXcd& M_inv) {
  // A condition number is at least one; rounding can dip a hair below.
  return std::max(1.0, spectral_norm(M) * spectral_norm(M_inv));
}

double kappa(const heli::HeliParams& p, double theta_d) {
  const double a1 = p.alpha1();
  const double a2 = p.alpha2();
  const double ml2 = p.ml2();
  const double td = theta_d;
  const double pitch = a1 * p.mgl() / 2.0 + 2.0 * a1 * ml2 * td + a1 * ml2 * td * td;
  const double yaw = 3.0 * a2 * ml2 + 2.0 * a2 * ml2 * td + a2 * ml2 * td * td;
  return std::sqrt(pitch * pitch + yaw * yaw);
}

GammaSolution solve_gamma(double beta, double kappa, double lambda1_abs,
                          double z0_norm) {
  if (!(beta > 0.0) || !(kappa > 0.0) || !(lambda1_abs > 0.0) || !(z0_norm >= 0.0)) {
    throw std::invalid_argument("solve_gamma needs positive beta, kappa, |lambda1|");
  }
  GammaSolution out;
  out.z0_max = lambda1_abs / (4.0 * beta * beta * kappa);
  double disc = 1.0 - 4.0 * beta * beta * kappa * z0_norm / lambda1_abs;
  if (disc < 0.0 && z0_norm <= out.z0_max * (1.0 + 1e-12)) disc = 0.0;
  if (disc < 0.0) return out;
  out.feasible = true;
  // |λ₁|(1 − √D)/(2βκ), rewritten to avoid cancellation for small z0.
  out.gamma = 2.0 * beta * z0_norm / (1.0 + std::sqrt(disc));
  return out;
}

double decay_integral(double lambda, double t) {
  if (lambda == 0.0) return t;
  return std::expm1(lambda * t) / lambda;
}

double Certificate::bound_residual() const {
  const double l1 = std::abs(lambda1);
  return beta * z0_max + beta * kappa * gamma * gamma / l1 - gamma;
}

std::optional<double> Certificate::gamma_for(double z0_norm) const {
  const GammaSolution s = solve_gamma(beta, kappa, std::abs(lambda1), z0_norm);
  if (!s.feasible) return std::nullopt;
  return s.gamma;
}

Certificate build_certificate(const Eigen::MatrixXd& A, const heli::HeliParams& p,
                              double theta_d) {
  const EigenDecomposition dec = eigen_decompose(A);
  for (Eigen::Index i = 0; i < dec.eigenvalues.size(); ++i) {
    if (!(dec.eigenvalues(i).real() < 0.0)) {
      throw UnstableSystemError(
          "refined linear part is not stable: eigenvalues " +
              format_eigenvalues(dec.eigenvalues),
          dec.eigenvalues);
    }
  }
  Certificate c;
  c.eigenvalues = dec.eigenvalues;
  c.beta = beta(dec.M, dec.M_inv);
  c.kappa = kappa(p, theta_d);
  c.lambda1 = dec.eigenvalues(0).real();
  const GammaSolution at_max =
      solve_gamma(c.beta, c.kappa, std::abs(c.lambda1),
                  std::abs(c.lambda1) / (4.0 * c.beta * c.beta * c.kappa));
  c.z0_max = at_max.z0_max;
  c.gamma = at_max.gamma;
  return c;
}

BoundednessEntry check_boundedness(const Certificate& cert,
                                   const sim::SimTrace& trace) {
  if (trace.rows.empty()) throw std::invalid_argument("empty trajectory");
  BoundednessEntry e;
  e.z0_norm = trace.rows.front().z.norm();
  if (e.z0_norm > cert.z0_max * (1.0 + 1e-9)) {
    e.rejected = true;
    return e;
  }
  e.gamma = cert.gamma_for(std::min(e.z0_norm, cert.z0_max)).value_or(cert.gamma);
  for (const auto& row : trace.rows) e.max_norm = std::max(e.max_norm, row.z.norm());
  e.pass = e.max_norm <= e.gamma;
  return e;
}

BoundednessReport summarize_boundedness(std::vector<BoundednessEntry> entries) {
  BoundednessReport r;
  r.entries = std::move(entries);
  r.worst_margin = std::numeric_limits<double>::infinity();
  for (const auto& e : r.entries) {
    if (e.rejected) {
      ++r.rejected;
      continue;
    }
    if (!e.pass) ++r.failures;
    r.worst_margin = std::min(r.worst_margin, e.gamma - e.max_norm);
  }
  r.pass = r.failures == 0 && r.entries.size() > r.rejected;
  return r;
}

BoundednessReport verify_boundedness(const Certificate& cert,
                                     std::span<const sim::SimTrace> trajectories) {
  std::vector<BoundednessEntry> entries;
  entries.reserve(trajectories.size());
  for (const auto& tr : trajectories) entries.push_back(check_boundedness(cert, tr));
  return summarize_boundedness(std::move(entries));
}

ConvergenceReport verify_convergence(const sim::SimTrace& trace,
                                     const ConvergenceOptions& opt) {
  if (!(opt.t0 > 0.0) || !(opt.grid_step > 0.0) || !(opt.horizon > opt.t0)) {
    throw std::invalid_argument("convergence check needs 0 < t0 < horizon");
  }
  if (trace.rows.size() < 2 || !(trace.row_dt > 0.0)) {
    throw std::invalid_argument("trace too short for convergence check");
  }
  const double covered = trace.rows.back().t - trace.rows.front().t;
  if (covered < opt.horizon - 1e-9 * opt.horizon) {
    throw std::invalid_argument("trace too short: covers " + std::to_string(covered) +
                                " s, horizon is " + std::to_string(opt.horizon) + " s");
  }
  auto row_at = [&](double t) -> const heli::StateZ& {
    const auto i = static_cast<std::size_t>(std::lround((t - trace.rows.front().t) / trace.row_dt));
    return trace.rows.at(std::min(i, trace.rows.size() - 1)).z;
  };

  ConvergenceReport r;
  const long n = static_cast<long>(std::floor((opt.horizon - opt.t0) / opt.grid_step + 1e-9));
  for (long k = 0; k <= n; ++k) {
    const double t2 = static_cast<double>(k) * opt.grid_step;
    r.t2.push_back(t2);
    r.d.push_back((row_at(t2 + opt.t0) - row_at(t2)).norm());
  }

  r.monotone_from = 0;
  for (std::size_t j = 0; j + 1 < r.d.size(); ++j) {
    const bool ok = r.d[j + 1] <= r.d[j] || r.d[j + 1] <= opt.noise_floor;
    if (!ok) r.monotone_from = j + 1;
  }
  r.eventually_monotone = r.monotone_from <= r.d.size() / 2;
  r.d_final = r.d.back();

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (std::size_t j = 0; j < r.d.size(); ++j) {
    if (r.d[j] <= opt.noise_floor) continue;
    const double y = std::log(r.d[j]);
    sx += r.t2[j];
    sy += y;
    sxx += r.t2[j] * r.t2[j];
    sxy += r.t2[j] * y;
    ++m;
  }
  if (m >= 3) {
    const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    r.fitted_rate = -slope;
  } else {
    r.fitted_rate = std::numeric_limits<double>::quiet_NaN();
  }

  if (opt.lambda_max) {
    const double lam = *opt.lambda_max;
    const std::size_t half = r.d.size() / 2;
    r.envelope_C = 0.0;
    for (std::size_t j = 0; j < half; ++j) {
      r.envelope_C = std::max(r.envelope_C, r.d[j] * std::exp(-lam * r.t2[j]));
    }
    for (std::size_t j = half; j < r.d.size(); ++j) {
      const double bound = r.envelope_C * std::exp(lam * r.t2[j]) * (1.0 + 1e-9) + opt.noise_floor;
      if (r.d[j] > bound) r.envelope_ok = false;
    }
  }
  r.pass = r.eventually_monotone && r.d_final < opt.tolerance && r.envelope_ok;
  return r;
}

double difference_at(const ConvergenceReport& report, double t2) {
  if (report.t2.empty()) throw std::invalid_argument("empty convergence report");
  std::size_t best = 0;
  for (std::size_t j = 1; j < report.t2.size(); ++j) {
    if (std::abs(report.t2[j] - t2) < std::abs(report.t2[best] - t2)) best = j;
  }
  return report.d[best];
}

}  // namespace helictl::cert
