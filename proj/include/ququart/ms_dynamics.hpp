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

#include <numbers>
#include <span>
#include <vector>

#include "ququart/qudit.hpp"
#include "ququart/scan.hpp"

namespace ququart {

// Model
// -----
// Two ions share one motional mode (the axial stretch mode). The bichromatic
// drive at w01 +- (w_m + delta) gives, in the Lamb-Dicke and rotating-wave
// limit and in the interaction picture,
//
//   H(t) = g S_x (a e^{i delta t} + a^dagger e^{-i delta t}),   g = eta Omega / 2,
//
// with S_x = X01 (x) 1 + 1 (x) X01. Because [H(t1), H(t2)] is proportional to
// S_x^2, the propagator is exactly
//
//   U(t) = D(alpha(t) S_x) exp(-i Phi(t) S_x^2),
//   alpha(t) = (g / delta) (e^{-i delta t} - 1),
//   Phi(t)   = (g^2 / delta) (t - sin(delta t) / delta).
//
// alpha returns to zero at delta t = 2 pi m (loop closure). S_x^2 contains
// 2 X01 (x) X01, so the entangling angle is chi(t) = 2 Phi(t); chi(2 pi/delta) =
// pi/4 requires g = delta/4, i.e. eta Omega = delta/2. The remaining single-ion
// part of S_x^2 is a phase on the (0,1) block relative to spectator levels.
//
// Optionally each Fock-state component |n> uses a Debye-Waller-renormalised
// coupling g_n = g f_n with f_n = e^{-eta^2/2} L_n^1(eta^2) / (n + 1), which
// makes the gate angle, and thus the Bell fidelity, depend on the phonon
// number. Both the closed form and the integrator apply the same per-Fock
// couplings.

/// Axial stretch-mode angular frequency, 2 pi x 809 kHz.
inline constexpr double kStretchModeFrequency = 2.0 * std::numbers::pi * 809e3;
/// Mean stretch-mode phonon number after sideband cooling.
inline constexpr double kStretchModeNbar = 0.079;
/// MS gate duration at the experimental operating point.
inline constexpr double kReferenceGateDuration = 310e-6;
/// Largest Lamb-Dicke parameter accepted by the linearised model.
inline constexpr double kMaxLambDicke = 0.3;

/// Physical MS drive parameters, angular units throughout.
struct PulseParams {
  double omega_rabi = 0.0;  // resonant |0>-|1> Rabi frequency, rad/s
  double delta = 0.0;       // detuning from the sideband, rad/s
  double eta = 0.0;         // Lamb-Dicke parameter
  double omega_m = kStretchModeFrequency;
  double tau = 0.0;  // pulse duration, s

  /// Per-Fock Debye-Waller renormalisation of the coupling.
  bool debye_waller = true;
  /// Strength of the off-resonant carrier term kappa Omega cos((w_m + delta) t) S_x,
  /// relative to the full bichromatic carrier. Only the integrator supports it.
  double carrier_fraction = 0.0;

  /// Throws ValidationError unless 0 < eta <= 0.3, delta > 0, tau > 0, Omega > 0.
  void validate() const;
};

/// Thermal phonon distribution truncated at a Fock cutoff, or an explicit
/// Fock-space density matrix.
class MotionState {
 public:
  /// Default cutoff 20, raised until the thermal tail mass is <= 1e-8.
  static MotionState thermal(double nbar);
  /// Throws ValidationError if the tail mass above `fock_cutoff` exceeds 1e-8.
  static MotionState thermal(double nbar, int fock_cutoff);
  /// Explicit density matrix on Fock states 0..rho.rows()-1.
  static MotionState explicit_state(Matrix rho);

  bool is_thermal() const { return thermal_; }
  double nbar() const { return nbar_; }
  int fock_cutoff() const { return static_cast<int>(rho_.rows()) - 1; }
  const Matrix& density() const { return rho_; }
  /// Diagonal of the (renormalised) truncated distribution.
  std::vector<double> fock_populations() const;
  bool is_fock_diagonal() const;

 private:
  MotionState(bool thermal, double nbar, Matrix rho) : thermal_(thermal), nbar_(nbar), rho_(std::move(rho)) {}
  bool thermal_;
  double nbar_;
  Matrix rho_;
};

inline constexpr int kDefaultFockCutoff = 20;
inline constexpr double kMaxThermalTail = 1e-8;

/// Probability mass of the thermal distribution above `fock_cutoff`.
double thermal_tail_mass(double nbar, int fock_cutoff);
int thermal_fock_cutoff(double nbar);

/// f_n = e^{-eta^2/2} L_n^1(eta^2) / (n + 1); f_n -> 1 as eta -> 0.
double debye_waller_factor(double eta, int n);

/// Lamb-Dicke parameter k x0 b for a beam along the mode, with
/// x0 = sqrt(hbar / (2 m w_m)) and mode participation b (1/sqrt(2) for the
/// two-ion stretch mode).
double lamb_dicke_parameter(double wavelength_m, double mass_amu, double omega_m, double participation);

/// Pulse parameters of the chi = pi/4 gate: tau = 2 pi / delta (first loop
/// closure) and Omega = delta / (2 eta f_0), f_0 = 1 without Debye-Waller.
PulseParams solve_gate_params(double eta, double delta, double omega_m = kStretchModeFrequency,
                              bool debye_waller = true);
/// Same, with delta = 2 pi / tau.
PulseParams gate_params_for_duration(double eta, double tau, double omega_m = kStretchModeFrequency,
                                     bool debye_waller = true);

/// Geometric entangling angle 2 Phi(t) for Fock component n.
double ms_gate_angle(const PulseParams& params, double t, int n = 0);

/// Closed-form reduced two-ion state after a drive of duration t.
/// Spin input must be a two-qudit register.
DensityMatrix evolve_ms(const DensityMatrix& spin, const MotionState& motion, const PulseParams& params, double t);
DensityMatrix evolve_ms(const QuditState& spin, const MotionState& motion, const PulseParams& params, double t);

struct IntegratorOptions {
  double tolerance = 1e-9;  // absolute and relative, per adaptive step
  int fock_margin = 16;     // extra Fock levels above the motional cutoff
};

/// Direct Dormand-Prince integration of the same Hamiltonian on the joint
/// spin (x) Fock space, one trajectory per (spin eigenvector, Fock
/// eigenvector) of the initial product state. Results at each requested time.
std::vector<DensityMatrix> evolve_ms_numeric(const DensityMatrix& spin, const MotionState& motion,
                                             const PulseParams& params, std::span<const double> times,
                                             const IntegratorOptions& opts = {});
DensityMatrix evolve_ms_numeric(const DensityMatrix& spin, const MotionState& motion, const PulseParams& params,
                                double t, const IntegratorOptions& opts = {});
DensityMatrix evolve_ms_numeric(const QuditState& spin, const MotionState& motion, const PulseParams& params,
                                double t, const IntegratorOptions& opts = {});

/// Exact P00, P01+P10 and P11 (series "p00", "p01_p10", "p11") against pulse
/// duration, starting from |00>.
ScanResult population_scan(const PulseParams& params, std::span<const double> tau_grid, const MotionState& motion,
                           int qudit_dim = kDefaultQuditDim);

/// (|00> - i|11>)/sqrt(2) on two qudits.
QuditState bell_state(int qudit_dim = kDefaultQuditDim);

}  // namespace ququart
