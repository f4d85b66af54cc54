// Copyright 2026 The ququart Authors
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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "ququart/errors.hpp"
#include "ququart/fitting.hpp"
#include "ququart/rng.hpp"
#include "ququart/scan.hpp"

using namespace ququart;

namespace {

constexpr double kPi = std::numbers::pi;

// Rabi-like curve 0.5 - 0.5 e^{-gamma t} cos(omega t), sampled with binomial noise.
std::vector<double> sample(std::span<const double> t, double omega, double gamma, int shots, std::uint64_t seed) {
  std::vector<double> y;
  SplitMix64 rng(seed);
  for (double x : t) {
    const double p = 0.5 - 0.5 * std::exp(-gamma * x) * std::cos(omega * x);
    y.push_back(shots > 0 ? static_cast<double>(binomial(rng, shots, p)) / shots : p);
  }
  return y;
}

}  // namespace

TEST(DampedSine, ExactRoundTrip) {
  const auto t = linspace(0.0, 200e-6, 41);
  std::vector<double> y;
  for (double x : t) y.push_back(damped_sine(x, 0.43, 2 * kPi * 21e3, 0.7, 3000.0, 0.48));
  FitOptions opts;
  opts.bootstrap_resamples = 0;
  const auto fit = fit_damped_sine(t, y, 0, opts);
  ASSERT_TRUE(fit.converged);
  EXPECT_NEAR(fit.value("amplitude"), 0.43, 1e-6);
  EXPECT_NEAR(fit.value("omega") / (2 * kPi * 21e3), 1.0, 1e-6);
  EXPECT_NEAR(fit.value("phase"), 0.7, 1e-6);
  EXPECT_NEAR(fit.value("gamma"), 3000.0, 1e-6 * 3000.0);
  EXPECT_NEAR(fit.value("offset"), 0.48, 1e-6);
  EXPECT_NEAR(fit.value("decay_time"), 1.0 / 3000.0, 1e-9);
  EXPECT_LT(fit.residual_norm, 1e-9);
}

TEST(DampedSine, CanonicalPhaseForNegativeCosine) {
  const auto t = linspace(0.0, 200e-6, 31);
  const auto y = sample(t, 2 * kPi * 15e3, 0.0, 0, 0);
  const auto fit = fit_damped_sine(t, y, 0, FitOptions{200, 0, 0});
  ASSERT_TRUE(fit.converged);
  EXPECT_NEAR(fit.value("amplitude"), 0.5, 1e-6);
  EXPECT_NEAR(fit.value("phase"), -kPi / 2, 1e-6);
  EXPECT_GE(fit.value("amplitude"), 0.0);
}

TEST(DampedSine, ConstantDataIsUnconverged) {
  const auto t = linspace(0.0, 1e-4, 20);
  const std::vector<double> y(t.size(), 0.3);
  const auto fit = fit_damped_sine(t, y, 0, FitOptions{200, 0, 0});
  EXPECT_FALSE(fit.converged);
}

TEST(DampedSine, InputChecks) {
  const std::vector<double> t{0, 1, 2, 3, 4}, y{0, 1, 0, 1, 0};
  EXPECT_THROW(fit_damped_sine(t, y, 0), ArgumentError);
  const std::vector<double> t8{0, 1, 2, 3, 4, 5, 6, 7}, y7{0, 1, 0, 1, 0, 1, 0};
  EXPECT_THROW(fit_damped_sine(t8, y7, 0), ArgumentError);
}

TEST(DampedSine, FrequencyWithinTwoPercentAt300Shots) {
  const auto t = linspace(0.0, 200e-6, 21);
  const double omega = 2 * kPi * 20e3;
  int good = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto fit = fit_damped_sine(t, sample(t, omega, 2000.0, 300, seed), 300, FitOptions{200, 0, 0});
    if (fit.converged && std::abs(fit.value("omega") / omega - 1.0) <= 0.02) ++good;
  }
  EXPECT_GE(good, 95);
}

TEST(DampedSine, OneSigmaCoverage) {
  const auto t = linspace(0.0, 200e-6, 21);
  const double omega = 2 * kPi * 20e3;
  int covered = 0, total = 0;
  for (std::uint64_t seed = 1000; seed < 1200; ++seed) {
    const auto fit = fit_damped_sine(t, sample(t, omega, 2000.0, 300, seed), 300, FitOptions{200, 0, 0});
    if (!fit.converged) continue;
    ++total;
    if (std::abs(fit.value("omega") - omega) <= fit.sigma("omega")) ++covered;
  }
  ASSERT_GT(total, 190);
  const double frac = static_cast<double>(covered) / total;
  EXPECT_GE(frac, 0.60);
  EXPECT_LE(frac, 0.75);
}

TEST(DampedSine, BootstrapAgreesWithAnalytic) {
  const auto t = linspace(0.0, 200e-6, 21);
  const auto y = sample(t, 2 * kPi * 20e3, 2000.0, 300, 7);
  const auto fit = fit_damped_sine(t, y, 300, FitOptions{200, 200, 99});
  ASSERT_TRUE(fit.converged);
  EXPECT_GT(fit.bootstrap_samples.rows(), 150);
  for (const char* name : {"amplitude", "omega", "offset"}) {
    const auto& p = fit.param(name);
    EXPECT_GT(p.sigma_bootstrap / p.sigma, 0.7) << name;
    EXPECT_LT(p.sigma_bootstrap / p.sigma, 1.4) << name;
  }
  const auto again = fit_damped_sine(t, y, 300, FitOptions{200, 200, 99});
  EXPECT_EQ(again.sigma("omega"), fit.sigma("omega"));
  EXPECT_EQ(again.param("omega").sigma_bootstrap, fit.param("omega").sigma_bootstrap);
}

TEST(Parity, ExactRecovery) {
  const auto phi = linspace(0.0, kPi, 20);
  for (double phase : {0.4, -1.2, 1.5}) {
    std::vector<double> y;
    for (double p : phi) y.push_back(parity_model(p, 0.62, phase));
    const auto fit = fit_parity(phi, y, 0, FitOptions{200, 0, 0});
    EXPECT_TRUE(fit.converged);
    EXPECT_NEAR(fit.value("amplitude"), 0.62, 1e-8);
    EXPECT_NEAR(fit.value("phase"), phase, 1e-8);
    EXPECT_NEAR(fit.value("coherence"), 0.31, 1e-8);
  }
}

TEST(Parity, ZeroAmplitudeAndChecks) {
  const auto phi = linspace(0.0, kPi, 12);
  const std::vector<double> zero(phi.size(), 0.0);
  const auto fit = fit_parity(phi, zero, 0, FitOptions{200, 0, 0});
  EXPECT_NEAR(fit.value("amplitude"), 0.0, 1e-12);
  const std::vector<double> five{0, 1, 2, 3, 4};
  EXPECT_THROW(fit_parity(five, five, 0), ArgumentError);
  EXPECT_THROW(fit.param("nope"), ArgumentError);
  EXPECT_NEAR(parity_model(kPi / 4, 1.0, 0.0), 1.0, 1e-15);
}

TEST(Parity, ScanOverloadAndPropagatedSigma) {
  ScanResult scan;
  scan.parameter = "phi_rad";
  scan.grid = linspace(0.0, kPi, 20);
  scan.shots = 300;
  std::vector<double> y, e;
  SplitMix64 rng(5);
  for (double p : scan.grid) {
    const double prob = 0.5 * (1 + parity_model(p, 0.62, 0.4));
    y.push_back(2.0 * binomial(rng, 300, prob) / 300.0 - 1.0);
    e.push_back(0.0);
  }
  scan.add_series("parity", y, e);
  const auto fit = fit_parity(scan, "parity", FitOptions{200, 300, 3});
  EXPECT_NEAR(fit.value("amplitude"), 0.62, 0.05);
  // Parity variance is 4 p (1 - p) / shots; averaging over 20 points gives about
  // sqrt(2 / 20) of the per-point error for A.
  EXPECT_GT(fit.sigma("amplitude"), 0.01);
  EXPECT_LT(fit.sigma("amplitude"), 0.03);
  EXPECT_NEAR(fit.param("amplitude").sigma_bootstrap / fit.sigma("amplitude"), 1.0, 0.3);
}
