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
#include "ququart/experiments.hpp"
#include "ququart/fitting.hpp"
#include "ququart/ms_dynamics.hpp"
#include "test_util.hpp"

using namespace ququart;

namespace {

constexpr double kPi = std::numbers::pi;

RabiSettings exact_rabi(int level, double omega) {
  RabiSettings s;
  s.level = level;
  s.rabi_frequency = omega;
  s.tau_grid = linspace(0.0, kMaxRabiDuration, 41);
  s.shots = 0;
  return s;
}

}  // namespace

TEST(Rabi, NoiselessScanIsSinSquared) {
  const double omega = 2 * kPi * 25e3;
  const auto scan = rabi_scan(exact_rabi(2, omega), NoiseModel::ideal());
  for (std::size_t i = 0; i < scan.grid.size(); ++i) {
    EXPECT_NEAR(scan.column("population")[i], std::pow(std::sin(omega * scan.grid[i] / 2), 2), 1e-12);
  }
  const auto fit = fit_damped_sine(scan, "population", FitOptions{200, 0, 0});
  const auto f = rabi_fidelity(fit);
  EXPECT_NEAR(f.value, 1.0, 1e-6);
  EXPECT_NEAR(f.time, kPi / omega, 1e-9);
}

TEST(Rabi, DephasedFirstMaximumMatchesClosedForm) {
  const double omega = 2 * kPi * 25e3;
  NoiseModel noise;
  noise.level_dephasing = {0.0, 0.0, 1500.0, 1500.0};
  noise.laser_dephasing = 5000.0;
  const auto scan = rabi_scan(exact_rabi(3, omega), noise);
  const auto fit = fit_damped_sine(scan, "population", FitOptions{200, 0, 0});
  const double gamma = noise.coherence_decay_rate(0, 3);
  const double omega_p = std::sqrt(omega * omega - gamma * gamma / 4);
  const auto f = rabi_fidelity(fit);
  EXPECT_NEAR(f.value, 0.5 * (1 + std::exp(-gamma * kPi / (2 * omega_p))), 1e-6);
  EXPECT_NEAR(f.time, kPi / omega_p, 1e-9);
}

TEST(Rabi, CrosstalkLeavesDrivenIonUnchanged) {
  const double omega = 2 * kPi * 25e3;
  NoiseModel noise;
  noise.crosstalk = 0.1;
  auto s = exact_rabi(1, omega);
  s.ion = 1;
  s.tau_grid = {kPi / omega};
  const auto here = rabi_scan(s, noise);
  EXPECT_NEAR(here.column("population")[0], 1.0, 1e-12);
  s.ion = 0;
  s.num_ions = 2;
  EXPECT_NEAR(rabi_scan(s, noise).column("population")[0], 1.0, 1e-12);
}

TEST(Rabi, SampledAndErrors) {
  auto s = exact_rabi(1, 2 * kPi * 25e3);
  s.shots = 300;
  s.seed = 11;
  const auto a = rabi_scan(s, NoiseModel::ideal());
  const auto b = rabi_scan(s, NoiseModel::ideal());
  EXPECT_EQ(a.values, b.values);
  EXPECT_EQ(a.shots, 300);
  s.level = 0;
  EXPECT_THROW(rabi_scan(s, NoiseModel::ideal()), ArgumentError);
  s.level = 1;
  s.rabi_frequency = 0.0;
  EXPECT_THROW(rabi_scan(s, NoiseModel::ideal()), ValidationError);
  FitResult unconverged;
  unconverged.model = "damped_sine";
  EXPECT_THROW(rabi_fidelity(unconverged), NumericalError);
}

TEST(Parity, IdealBellHasUnitAmplitude) {
  const double eta = lamb_dicke_parameter(435.5e-9, 171.0, kStretchModeFrequency, 1.0 / std::sqrt(2.0));
  const auto p = gate_params_for_duration(eta, kReferenceGateDuration, kStretchModeFrequency, false);
  const auto rho = prepare_ms_bell(p, MotionState::thermal(0.0), NoiseModel::ideal());
  const auto phi = linspace(0.0, kPi, 20);
  const auto scan = parity_scan(rho, phi, 0, 0);
  const auto fit = fit_parity(scan, "parity", FitOptions{200, 0, 0});
  EXPECT_NEAR(fit.value("amplitude"), 1.0, 1e-10);
  EXPECT_NEAR(fit.value("phase"), 0.0, 1e-10);
  const auto exp = bell_experiment(rho, phi, 0, 0, {}, FitOptions{200, 0, 0});
  EXPECT_NEAR(exp.fidelity.value, 1.0, 1e-9);
  EXPECT_NEAR(exp.exact_fidelity, 1.0, 1e-10);
}

TEST(Parity, SyntheticStateHasRequestedOscillation) {
  const auto rho = synthetic_parity_state(0.45, 0.45, 0.62, 0.4);
  const auto phi = linspace(0.0, kPi, 25);
  const auto scan = parity_scan(rho, phi, 0, 0);
  for (std::size_t i = 0; i < phi.size(); ++i) {
    EXPECT_NEAR(scan.column("parity")[i], parity_model(phi[i], 0.62, 0.4), 1e-12);
    EXPECT_NEAR(scan.column("parity")[i], 1.0 - 2.0 * scan.column("p01_p10")[i], 1e-12);
  }
  const auto mixed = synthetic_parity_state(0.25, 0.25, 0.0, 0.0);
  const auto fit = fit_parity(parity_scan(mixed, phi, 0, 0), "parity", FitOptions{200, 0, 0});
  EXPECT_NEAR(fit.value("amplitude"), 0.0, 1e-12);
  EXPECT_THROW(synthetic_parity_state(0.3, 0.3, 0.9, 0.0), ValidationError);
  EXPECT_THROW(synthetic_parity_state(0.7, 0.5, 0.0, 0.0), ValidationError);
}

TEST(BellFidelityFormula, ExamplesAndLimits) {
  EXPECT_NEAR(bell_fidelity(0.5, 0.5, 1.0).value, 1.0, 1e-15);
  EXPECT_NEAR(bell_fidelity(0.45, 0.45, 0.62).value, 0.76, 1e-15);
  EXPECT_NEAR(bell_fidelity(0.45, 0.45, -0.62).value, 0.76, 1e-15);
  const auto over = bell_fidelity(0.6, 0.6, 1.0);
  EXPECT_EQ(over.value, 1.0);
  EXPECT_NEAR(over.raw, 1.1, 1e-15);
  EXPECT_FALSE(over.physical);
  double prev = -1.0;
  for (double a = 0.0; a <= 1.0; a += 0.1) {
    const double f = bell_fidelity(0.4, 0.4, a).value;
    EXPECT_GT(f, prev);
    prev = f;
  }
  EXPECT_THROW(bell_fidelity(1.2, 0.0, 0.0), ValidationError);
  EXPECT_THROW(bell_fidelity(0.5, 0.5, 1.5), ValidationError);
}

TEST(MsScan, ExactSeriesSumToOne) {
  const double eta = lamb_dicke_parameter(435.5e-9, 171.0, kStretchModeFrequency, 1.0 / std::sqrt(2.0));
  const auto p = gate_params_for_duration(eta, kReferenceGateDuration);
  const auto grid = linspace(0.0, 2 * p.tau, 11);
  const auto scan = ms_duration_scan(p, MotionState::thermal(0.079), NoiseModel::ideal(), grid, 0, 0);
  const auto ref = population_scan(p, grid, MotionState::thermal(0.079));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    EXPECT_NEAR(scan.column("p00")[i] + scan.column("p01_p10")[i] + scan.column("p11")[i], 1.0, 1e-10);
    EXPECT_NEAR(scan.column("p00")[i], ref.column("p00")[i], 1e-10);
  }
}
