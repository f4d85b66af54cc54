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

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ququart/fitting.hpp"
#include "ququart/ms_dynamics.hpp"
#include "ququart/noise.hpp"
#include "ququart/qudit.hpp"
#include "ququart/scan.hpp"

namespace ququart {

/// Longest single-qudit pulse in the Rabi scans, s.
inline constexpr double kMaxRabiDuration = 200e-6;
inline constexpr int kDefaultShots = 300;

struct RabiSettings {
  int ion = 0;
  int level = 1;                // k of the |0> <-> |k> drive
  double rabi_frequency = 0.0;  // Omega, rad/s; required
  std::vector<double> tau_grid;
  int shots = kDefaultShots;  // per point; 0 gives exact expectation values
  std::uint64_t seed = 0;
  int qudit_dim = kDefaultQuditDim;
  int num_ions = 2;
  bool apply_spam = true;
};

/// Rabi oscillation between |0> and |k> on one ion of a register prepared in
/// |0...0>. Each point drives R_0k(0, Omega tau) with dephasing during the
/// pulse, the cross-talk pulse on adjacent ions, then shelving readout of
/// level k. Series "population" (P(|k>) estimate) with binomial errors.
ScanResult rabi_scan(const RabiSettings& settings, const NoiseModel& noise);

struct FidelityEstimate {
  double value = 0.0;
  double sigma = 0.0;
  double sigma_bootstrap = 0.0;
  double time = 0.0;  // where the estimate is taken, s
};

/// The fitted damped sine evaluated at its first maximum t > 0. Throws
/// NumericalError on an unconverged fit.
FidelityEstimate rabi_fidelity(const FitResult& fit);

/// P00, P01+P10, P11 after an MS drive of each duration in `tau_grid`, with
/// dephasing over the pulse and camera readout (series "p00", "p01_p10",
/// "p11").
ScanResult ms_duration_scan(const PulseParams& params, const MotionState& motion, const NoiseModel& noise,
                            std::span<const double> tau_grid, int shots, std::uint64_t seed,
                            int qudit_dim = kDefaultQuditDim);

/// Two-ion state after the MS pulse of `params` (duration params.tau) from
/// |00>, followed by dephasing over the same duration.
DensityMatrix prepare_ms_bell(const PulseParams& params, const MotionState& motion, const NoiseModel& noise,
                              int qudit_dim = kDefaultQuditDim);

/// Qubit-subspace state with the given P00, P11 (the rest split evenly over
/// 01 and 10) and the 00-11 coherence whose parity oscillation is
/// A sin(2 (phi + phi0)). Throws ValidationError if it is not a state.
DensityMatrix synthetic_parity_state(double p00, double p11, double amplitude, double phase,
                                     int qudit_dim = kDefaultQuditDim);

/// Global analysing pulse R_01(phi, pi/2) on both ions, then camera readout.
/// Series "p01_p10" and "parity" = 1 - 2 (P01 + P10).
ScanResult parity_scan(const DensityMatrix& prepared, std::span<const double> phi_grid, int shots,
                       std::uint64_t seed, const SpamModel& spam = {});

struct BellFidelity {
  double value = 0.0;  // clamped to [0, 1]
  double raw = 0.0;    // (p00 + p11)/2 + |A|/2 before clamping
  bool physical = true;
};

/// (p00 + p11)/2 + |A|/2. Throws ValidationError unless p00, p11 in [0, 1]
/// and A in [-1, 1]; a result above one is clamped and flagged unphysical.
BellFidelity bell_fidelity(double p00, double p11, double amplitude);

struct BellExperiment {
  double p00 = 0.0, p11 = 0.0;
  double p00_sigma = 0.0, p11_sigma = 0.0;
  ScanResult parity;
  FitResult fit;
  BellFidelity fidelity;
  double fidelity_sigma = 0.0;
  double exact_fidelity = 0.0;  // <Bell| rho |Bell> of the simulated state
};

/// Populations of `prepared` by camera readout plus a parity scan and fit,
/// combined into the Bell fidelity estimate.
BellExperiment bell_experiment(const DensityMatrix& prepared, std::span<const double> phi_grid, int shots,
                               std::uint64_t seed, const SpamModel& spam = {}, const FitOptions& fit = {});

}  // namespace ququart
