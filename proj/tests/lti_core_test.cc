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

#include <gtest/gtest.h>

#include "helictl/sim_runtime.h"
#include "test_oracles.h"

namespace helictl::lti {
namespace {

using testing::horner;
using testing::Uniform;
using cd = std::complex<double>;

std::vector<double> coeffs(const CharPoly& p) { return {p.coeffs().begin(), p.coeffs().end()}; }

TEST(ClosedLoopCharpoly, AddsPlantAndGainCoefficients) {
  const CharPoly p = closed_loop_charpoly(PlantCoeffs({2, 3}), {1, {2, 1}});
  EXPECT_EQ(coeffs(p), (std::vector<double>{1, 4, 4, 1}));
}

TEST(ClosedLoopCharpoly, ZeroGainFirstOrderPlant) {
  const CharPoly p = closed_loop_charpoly(PlantCoeffs({0}), {0, {0}});
  EXPECT_EQ(coeffs(p), (std::vector<double>{0, 0, 1}));
}

TEST(ClosedLoopCharpoly, MatchesExpandedRootProduct) {
  const CharPoly p = closed_loop_charpoly(PlantCoeffs({0, 0}), {6, {11, 6}});
  EXPECT_EQ(coeffs(p), testing::expand_real_roots({-1, -2, -3}));
}

TEST(ClosedLoopCharpoly, RejectsOrderMismatch) {
  EXPECT_THROW(closed_loop_charpoly(PlantCoeffs({1, 2}), {1, {1}}), DimensionMismatch);
  EXPECT_THROW(closed_loop_charpoly(PlantCoeffs({1}), {1, {1, 2, 3}}), DimensionMismatch);
}

TEST(ClosedLoopCharpoly, CoefficientAdditivityIsExact) {
  Uniform u(7);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = u.integer(1, 6);
    std::vector<double> a(static_cast<std::size_t>(n)), b(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      a[static_cast<std::size_t>(i)] = u(-50, 50);
      b[static_cast<std::size_t>(i)] = u(-50, 50);
    }
    const double b0 = u(-10, 10);
    const CharPoly p = closed_loop_charpoly(PlantCoeffs(a), {b0, b});
    ASSERT_EQ(p.degree(), n + 1);
    EXPECT_EQ(p[0], b0);
    EXPECT_EQ(p[n + 1], 1.0);
    for (int i = 1; i <= n; ++i) {
      EXPECT_EQ(p[i], a[static_cast<std::size_t>(i - 1)] + b[static_cast<std::size_t>(i - 1)]);
    }
  }
}

TEST(PlantCoeffs, Validates) {
  EXPECT_THROW(PlantCoeffs({}), std::invalid_argument);
  EXPECT_THROW(PlantCoeffs({1.0, NAN}), std::invalid_argument);
  const PlantCoeffs p({4, 5, 6});
  EXPECT_EQ(p.order(), 3);
  EXPECT_EQ(p.a(1), 4);
  EXPECT_EQ(p.a(3), 6);
}

TEST(CharPolyType, NormalisesToMonic) {
  const CharPoly p({2, 4, 2});
  EXPECT_EQ(coeffs(p), (std::vector<double>{1, 2, 1}));
  EXPECT_THROW(CharPoly({1, 0}), std::invalid_argument);
  EXPECT_THROW(CharPoly({1}), std::invalid_argument);
  EXPECT_THROW(CharPoly({1, INFINITY, 1}), std::invalid_argument);
}

TEST(CharPolyType, MultiplyAndFromRoots) {
  const CharPoly q = multiply(CharPoly({4, 2, 1}), CharPoly({10, 1}));
  EXPECT_EQ(coeffs(q), (std::vector<double>{40, 24, 12, 1}));
  const std::vector<cd> roots{{-1, 2}, {-1, -2}, {-3, 0}};
  const CharPoly r = from_roots(roots);
  // (s² + 2s + 5)(s + 3)
  EXPECT_NEAR(r[0], 15.0, 1e-12);
  EXPECT_NEAR(r[1], 11.0, 1e-12);
  EXPECT_NEAR(r[2], 5.0, 1e-12);
  EXPECT_EQ(r[3], 1.0);
}

void expect_roots_near(std::vector<cd> got, std::vector<cd> want, double tol) {
  ASSERT_EQ(got.size(), want.size());
  auto key = [](cd a, cd b) { return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag(); };
  std::sort(got.begin(), got.end(), key);
  std::sort(want.begin(), want.end(), key);
  for (std::size_t i = 0; i < got.size(); ++i) {
    EXPECT_NEAR(got[i].real(), want[i].real(), tol) << i;
    EXPECT_NEAR(got[i].imag(), want[i].imag(), tol) << i;
  }
}

TEST(PolyRoots, DistinctRealRoots) {
  const CharPoly p({6, 11, 6, 1});
  const auto r = poly_roots(p);
  expect_roots_near(r, {-1, -2, -3}, 1e-12);
  for (cd z : r) {
    EXPECT_LE(std::abs(horner(coeffs(p), std::complex<long double>(z))), 1e-8L * 11.0L);
  }
}

TEST(PolyRoots, DoubleRoot) {
  expect_roots_near(poly_roots(CharPoly({1, 2, 1})), {-1, -1}, 1e-7);
}

TEST(PolyRoots, ImaginaryPair) {
  const auto r = poly_roots(CharPoly({1, 0, 1}));
  expect_roots_near(r, {{0, 1}, {0, -1}}, 1e-14);
  EXPECT_GT(r[0].imag(), 0.0);  // sorted: equal real parts, positive imaginary first
}

TEST(PolyRoots, SortedByDescendingRealPart) {
  const auto r = poly_roots(CharPoly({6, 11, 6, 1}));
  EXPECT_NEAR(r[0].real(), -1, 1e-12);
  EXPECT_NEAR(r[2].real(), -3, 1e-12);
}

TEST(PolyRoots, ResidualBoundOnRandomPolynomials) {
  Uniform u(11);
  for (int trial = 0; trial < 300; ++trial) {
    const int deg = u.integer(1, 7);
    std::vector<cd> roots;
    while (static_cast<int>(roots.size()) < deg) {
      if (deg - static_cast<int>(roots.size()) >= 2 && u(0, 1) < 0.5) {
        const cd z(u(-5, 5), u(0.1, 5));
        roots.push_back(z);
        roots.push_back(std::conj(z));
      } else {
        roots.emplace_back(u(-5, 5), 0.0);
      }
    }
    const CharPoly p = from_roots(roots);
    const auto found = poly_roots(p);
    ASSERT_EQ(static_cast<int>(found.size()), deg);
    for (cd z : found) {
      EXPECT_LE(static_cast<double>(std::abs(horner(coeffs(p), std::complex<long double>(z)))),
                1e-8 * p.max_abs_coeff());
    }
  }
}

TEST(Hurwitz, Examples) {
  EXPECT_TRUE(is_hurwitz(CharPoly({1, 4, 4, 1})));
  EXPECT_FALSE(is_hurwitz(CharPoly({0, 0, 1})));
  EXPECT_EQ(classify_stability(CharPoly({0, 0, 1})), Stability::kMarginal);
  EXPECT_FALSE(is_hurwitz(CharPoly({-1, 0, 1})));
  EXPECT_EQ(classify_stability(CharPoly({-1, 0, 1})), Stability::kUnstable);
  EXPECT_EQ(classify_stability(CharPoly({1, 0, 1})), Stability::kMarginal);
}

TEST(Hurwitz, AgreesWithRootRealParts) {
  Uniform u(5);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> c(static_cast<std::size_t>(u.integer(2, 5)));
    for (double& v : c) v = u(-3, 6);
    c.push_back(1.0);
    const CharPoly p(c);
    const auto r = poly_roots(p);
    const bool expected = std::all_of(r.begin(), r.end(), [](cd z) { return z.real() < -kMarginalBand; });
    EXPECT_EQ(is_hurwitz(p), expected);
  }
}

TEST(FinalValue, Examples) {
  const PlantCoeffs plant({0, 0});
  const ControllerGains gains{6, {11, 6}};
  EXPECT_EQ(step_disturbance_final_value(plant, gains, 0.0), 0.0);
  EXPECT_DOUBLE_EQ(step_disturbance_final_value(plant, gains, 1.0), 1.0);
  EXPECT_DOUBLE_EQ(step_disturbance_final_value(plant, gains, 0.1745), 0.1745);
}

TEST(FinalValue, RejectsNonHurwitzAndMissingIntegral) {
  EXPECT_THROW(step_disturbance_final_value(PlantCoeffs({0, 0}), {-6, {11, 6}}, 1.0),
               FinalValueError);
  EXPECT_THROW(step_disturbance_final_value(PlantCoeffs({0, 0}), {0, {11, 6}}, 1.0),
               FinalValueError);
}

TEST(FinalValue, SimulationConvergesToAnalyticValue) {
  Uniform u(3);
  int checked = 0;
  while (checked < 15) {
    const int n = u.integer(1, 4);
    std::vector<cd> roots;
    while (static_cast<int>(roots.size()) < n + 1) {
      if (n + 1 - static_cast<int>(roots.size()) >= 2 && u(0, 1) < 0.4) {
        const cd z(-u(0.5, 3), u(0.1, 2));
        roots.push_back(z);
        roots.push_back(std::conj(z));
      } else {
        roots.emplace_back(-u(0.5, 3), 0.0);
      }
    }
    const CharPoly desired = from_roots(roots);
    std::vector<double> a(static_cast<std::size_t>(n));
    for (double& v : a) v = u(-1, 1);
    ControllerGains g{desired[0], {}};
    for (int i = 1; i <= n; ++i) g.b.push_back(desired[i] - a[static_cast<std::size_t>(i - 1)]);
    const PlantCoeffs plant(a);
    const CharPoly cl = closed_loop_charpoly(plant, g);
    if (!is_hurwitz(cl)) continue;
    const double x_d = u(-1, 1);
    const double slowest = std::abs(poly_roots(cl).front().real());
    const auto tr = sim::simulate_lti_loop(plant, g, x_d, [](double) { return 1.0; }, 1e-3,
                                           20.0 / slowest);
    EXPECT_NEAR(tr.x.back(), step_disturbance_final_value(plant, g, x_d), 1e-3);
    ++checked;
  }
}

TEST(FinalValue, IntegralIsNecessaryOnFixedPlant) {
  const PlantCoeffs plant({2, 3});
  const ControllerGains g{0.0, {1.0, 1.0}};
  const auto tr = sim::simulate_lti_loop(plant, g, 0.0, [](double) { return 1.0; }, 1e-3, 30.0);
  // x'' + 4x' + 3x = 1 settles at 1/3.
  EXPECT_GT(std::abs(tr.x.back()), 1e-6);
  EXPECT_NEAR(tr.x.back(), 1.0 / 3.0, 1e-6);
}

}  // namespace
}  // namespace helictl::lti
