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

#include <span>
#include <vector>

#include "ququart/gates.hpp"
#include "ququart/qudit.hpp"

namespace ququart {

/// Magnetic sensitivity of the D-manifold qudit levels at the 500 uT
/// operating field, Hz/uT.
inline constexpr double kLevelFieldSensitivity = 52.0;
/// Default addressing cross-talk fraction (upper bound seen on hardware).
inline constexpr double kDefaultCrosstalk = 0.10;
inline constexpr double kMaxCrosstalk = 0.2;

/// State-preparation-and-measurement misassignment probabilities.
struct SpamModel {
  double bright_as_dark = 0.0;  // an ion in |0> is detected dark
  double dark_as_bright = 0.0;  // an ion outside |0> is detected bright
  double transfer_error = 0.0;  // the R_0k(0, pi) shelving transfer fails

  bool is_ideal() const { return bright_as_dark == 0.0 && dark_as_bright == 0.0 && transfer_error == 0.0; }
  void validate() const;
};

/// Dephasing, cross-talk and SPAM parameters. Each qudit level l carries an
/// independent phase diffusion of rate D_l (rad^2/s); the laser adds a common
/// diffusion L (rad^2/s) to |0> relative to every D-manifold level. Coherence
/// rho_ij then decays as exp(-Gamma_ij t) with
///   Gamma_ij = (D_i + D_j)/2 + (L/2) [exactly one of i, j is 0].
/// Ions dephase independently.
struct NoiseModel {
  std::vector<double> level_dephasing;  // D_l, missing levels count as 0
  double laser_dephasing = 0.0;         // L
  double crosstalk = 0.0;               // epsilon in [0, 0.2]
  SpamModel spam;
  std::vector<double> field_sensitivity;  // Hz/uT per level, informational

  static NoiseModel ideal() { return {}; }
  void validate() const;
  double coherence_decay_rate(int i, int j) const;
};

/// [0, 0, 52, 52, ...] Hz/uT: the m_F = 0 clock pair is first-order
/// insensitive and its second-order term is neglected.
std::vector<double> default_field_sensitivity(int d = kDefaultQuditDim);

/// Per-level phase diffusion D_l = 2 pi^2 s_l^2 S_B for white field noise of
/// one-sided power spectral density S_B (uT^2/Hz) and sensitivities s_l (Hz/uT).
std::vector<double> magnetic_dephasing_rates(std::span<const double> sensitivity, double field_psd);

/// rho_ij -> rho_ij exp(-t sum_q Gamma(i_q, j_q)) over all ions q.
DensityMatrix apply_dephasing(const DensityMatrix& rho, const NoiseModel& noise, double duration);

/// The addressed rotation followed by the same pulse with theta' = epsilon theta
/// on each adjacent ion (ion - 1, ion + 1 within [0, num_ions)).
std::vector<Rotation> crosstalk_expand(const Rotation& rotation, double epsilon, int num_ions = 2);

/// Drives `rotation` for a duration |theta| / rabi_frequency while the ion
/// dephases: the exact single-ion Lindblad propagator exp(L t), L = -i[H, .]
/// plus the coherence decay of `noise`. Equals the ideal unitary when all
/// rates vanish.
DensityMatrix apply_driven_rotation(const DensityMatrix& rho, const Rotation& rotation, double rabi_frequency,
                                    const NoiseModel& noise);

}  // namespace ququart
