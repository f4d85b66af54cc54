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

#include "ququart/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ququart/errors.hpp"
#include "ququart/gates.hpp"
#include "ququart/readout.hpp"
#include "ququart/rng.hpp"

namespace ququart {
namespace {

constexpr double kPi = std::numbers::pi;

void check_grid(std::span<const double> grid, const char* what) {
  if (grid.empty()) throw ArgumentError(std::string(what) + " grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i])) throw ArgumentError(std::string(what) + " grid must be finite");
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw ArgumentError(std::string(what) + " grid must be strictly increasing");
    }
  }
}

double binomial_error(double f, int shots) {
  if (shots <= 0) return 0.0;
  const double q = std::clamp(f, 0.0, 1.0);
  return std::sqrt(q * (1.0 - q) / shots);
}

DensityMatrix ground_register(int num_ions, int d) {
  const Dims dims(static_cast<std::size_t>(num_ions), d);
  const std::vector<int> zeros(static_cast<std::size_t>(num_ions), 0);
  return DensityMatrix::from_state(basis_state(dims, zeros));
}

// Outcome distribution of the camera, sampled or exact.
std::array<double, 4> camera_fractions(const DensityMatrix& rho, int shots, std::uint64_t seed,
                                       const SpamModel& spam) {
  if (shots == 0) return camera_distribution(rho, spam);
  const CameraCounts c = camera_readout(rho, shots, seed, spam);
  return {c.fraction(0), c.fraction(1), c.fraction(2), c.fraction(3)};
}

}  // namespace

ScanResult rabi_scan(const RabiSettings& s, const NoiseModel& noise) {
  noise.validate();
  if (!(s.rabi_frequency > 0.0) || !std::isfinite(s.rabi_frequency)) {
    throw ValidationError("Rabi frequency must be positive");
  }
  if (s.qudit_dim < kMinQuditDim || s.qudit_dim > kMaxQuditDim) throw DimensionError("qudit dimension outside [2, 6]");
  if (s.num_ions < 1) throw DimensionError("need at least one ion");
  if (s.ion < 0 || s.ion >= s.num_ions) throw ArgumentError("Rabi ion out of range");
  if (s.level < 1 || s.level >= s.qudit_dim) throw ArgumentError("Rabi level must lie in [1, d)");
  if (s.shots < 0) throw ArgumentError("shots must be >= 0");
  check_grid(s.tau_grid, "pulse duration");
  if (s.tau_grid.front() < 0.0) throw ArgumentError("pulse durations must be >= 0");

  const SpamModel spam = s.apply_spam ? noise.spam : SpamModel{};
  const DensityMatrix ground = ground_register(s.num_ions, s.qudit_dim);
  std::vector<double> pop, err;
  for (std::size_t i = 0; i < s.tau_grid.size(); ++i) {
    const double tau = s.tau_grid[i];
    const Rotation pulse{s.ion, 0, s.level, 0.0, s.rabi_frequency * tau};
    DensityMatrix rho = ground;
    for (const Rotation& r : crosstalk_expand(pulse, noise.crosstalk, s.num_ions)) {
      if (r.theta == 0.0) continue;
      // Same pulse length on every ion: the neighbour sees epsilon Omega.
      const double rate = s.rabi_frequency * (r.theta / pulse.theta);
      rho = apply_driven_rotation(rho, r, rate, noise);
    }
    double f;
    if (s.shots == 0) {
      const int keep[] = {s.ion};
      const auto marginal = populations(partial_trace(rho, keep));
      f = expected_shelving_fraction(marginal, s.level, spam);
    } else {
      f = shelving_readout(rho, s.ion, s.level, s.shots, derive_seed(s.seed, i), spam, "rabi").fraction();
    }
    pop.push_back(f);
    err.push_back(binomial_error(f, s.shots));
  }
  ScanResult out;
  out.parameter = "tau_s";
  out.grid = s.tau_grid;
  out.shots = s.shots;
  out.seed = s.seed;
  out.add_series("population", std::move(pop), std::move(err));
  return out;
}

namespace {

// First maximum t > 0 of A e^{-g t} sin(w t + p) + c (A >= 0, w > 0):
// w t + p = atan2(w, g) + 2 pi m.
double first_maximum(double omega, double phase, double gamma) {
  const double period = 2.0 * kPi / omega;
  double t = (std::atan2(omega, gamma) - phase) / omega;
  t = std::fmod(t, period);
  if (t <= 0.0) t += period;
  return t;
}

double fidelity_at_max(const Eigen::VectorXd& x) {
  const double t = first_maximum(x(1), x(2), x(3));
  return damped_sine(t, x(0), x(1), x(2), x(3), x(4));
}

}  // namespace

FidelityEstimate rabi_fidelity(const FitResult& fit) {
  if (fit.model != "damped_sine") throw ArgumentError("rabi_fidelity needs a damped-sine fit");
  if (!fit.converged) throw NumericalError("Rabi fit did not converge; fidelity is undefined");
  Eigen::VectorXd x(5);
  x << fit.value("amplitude"), fit.value("omega"), fit.value("phase"), fit.value("gamma"), fit.value("offset");
  if (!(x(1) > 0.0)) throw NumericalError("Rabi fit has no oscillation frequency");

  FidelityEstimate est;
  est.time = first_maximum(x(1), x(2), x(3));
  est.value = fidelity_at_max(x);

  // Delta method with central differences.
  Eigen::VectorXd grad(5);
  for (int k = 0; k < 5; ++k) {
    const double h = 1e-6 * std::max(std::abs(x(k)), k == 2 ? 1.0 : 1e-3 * std::abs(x(1)) + 1e-12);
    Eigen::VectorXd up = x, dn = x;
    up(k) += h;
    dn(k) -= h;
    grad(k) = (fidelity_at_max(up) - fidelity_at_max(dn)) / (2.0 * h);
  }
  const Eigen::MatrixXd cov = fit.covariance.topLeftCorner(5, 5);
  est.sigma = std::sqrt(std::max(0.0, grad.dot(cov * grad)));

  if (fit.bootstrap_samples.rows() > 1) {
    std::vector<double> v;
    for (Eigen::Index r = 0; r < fit.bootstrap_samples.rows(); ++r) {
      const Eigen::VectorXd xb = fit.bootstrap_samples.row(r).transpose();
      if (xb(1) > 0.0) v.push_back(fidelity_at_max(xb));
    }
    if (v.size() > 1) {
      double mean = 0.0;
      for (double f : v) mean += f;
      mean /= static_cast<double>(v.size());
      double ss = 0.0;
      for (double f : v) ss += (f - mean) * (f - mean);
      est.sigma_bootstrap = std::sqrt(ss / static_cast<double>(v.size() - 1));
    }
  }
  return est;
}

ScanResult ms_duration_scan(const PulseParams& params, const MotionState& motion, const NoiseModel& noise,
                            std::span<const double> tau_grid, int shots, std::uint64_t seed, int qudit_dim) {
  noise.validate();
  if (shots < 0) throw ArgumentError("shots must be >= 0");
  check_grid(tau_grid, "pulse duration");
  if (tau_grid.front() < 0.0) throw ArgumentError("pulse durations must be >= 0");
  const QuditState start = basis_state({qudit_dim, qudit_dim}, {0, 0});
  std::vector<double> p00, p01, p11, e00, e01, e11;
  for (std::size_t i = 0; i < tau_grid.size(); ++i) {
    DensityMatrix rho = evolve_ms(start, motion, params, tau_grid[i]);
    rho = apply_dephasing(rho, noise, tau_grid[i]);
    const auto f = camera_fractions(rho, shots, derive_seed(seed, i), noise.spam);
    p00.push_back(f[0]);
    p01.push_back(f[1] + f[2]);
    p11.push_back(f[3]);
    e00.push_back(binomial_error(f[0], shots));
    e01.push_back(binomial_error(f[1] + f[2], shots));
    e11.push_back(binomial_error(f[3], shots));
  }
  ScanResult out;
  out.parameter = "tau_s";
  out.grid.assign(tau_grid.begin(), tau_grid.end());
  out.shots = shots;
  out.seed = seed;
  out.add_series("p00", std::move(p00), std::move(e00));
  out.add_series("p01_p10", std::move(p01), std::move(e01));
  out.add_series("p11", std::move(p11), std::move(e11));
  return out;
}

DensityMatrix prepare_ms_bell(const PulseParams& params, const MotionState& motion, const NoiseModel& noise,
                              int qudit_dim) {
  params.validate();
  noise.validate();
  const DensityMatrix rho = evolve_ms(basis_state({qudit_dim, qudit_dim}, {0, 0}), motion, params, params.tau);
  return apply_dephasing(rho, noise, params.tau);
}

DensityMatrix synthetic_parity_state(double p00, double p11, double amplitude, double phase, int d) {
  if (!(p00 >= 0.0 && p00 <= 1.0 && p11 >= 0.0 && p11 <= 1.0) || p00 + p11 > 1.0 + kValidationTol) {
    throw ValidationError("P00 and P11 must be probabilities with P00 + P11 <= 1");
  }
  if (!(std::abs(amplitude) <= 1.0)) throw ValidationError("parity amplitude must lie in [-1, 1]");
  const auto n = static_cast<Eigen::Index>(d * d);
  Matrix rho = Matrix::Zero(n, n);
  const Eigen::Index i00 = 0, i01 = 1, i10 = d, i11 = d + 1;
  const double rest = std::max(0.0, 1.0 - p00 - p11) / 2.0;
  rho(i00, i00) = p00;
  rho(i01, i01) = rest;
  rho(i10, i10) = rest;
  rho(i11, i11) = p11;
  // Parity after the analysing pulses is -2 Re(c) cos 2phi + 2 Im(c) sin 2phi
  // for c = rho_{00,11}, so c = (A/2) e^{i (2 phi0 + pi/2)}.
  const Complex c = 0.5 * amplitude * std::polar(1.0, 2.0 * phase + kPi / 2.0);
  rho(i00, i11) = c;
  rho(i11, i00) = std::conj(c);
  return DensityMatrix({d, d}, std::move(rho));
}

ScanResult parity_scan(const DensityMatrix& prepared, std::span<const double> phi_grid, int shots,
                       std::uint64_t seed, const SpamModel& spam) {
  if (prepared.num_qudits() != 2) throw DimensionError("parity scan expects two ions");
  if (shots < 0) throw ArgumentError("shots must be >= 0");
  check_grid(phi_grid, "analysis phase");
  std::vector<double> q, qe, par, pe;
  for (std::size_t i = 0; i < phi_grid.size(); ++i) {
    DensityMatrix rho = prepared;
    for (int ion = 0; ion < 2; ++ion) {
      const int t[] = {ion};
      rho = apply_unitary(rho, rotation_matrix(1, phi_grid[i], kPi / 2.0, prepared.dims()[static_cast<std::size_t>(ion)]), t);
    }
    const auto f = camera_fractions(rho, shots, derive_seed(seed, i), spam);
    const double odd = f[1] + f[2];
    q.push_back(odd);
    qe.push_back(binomial_error(odd, shots));
    par.push_back(1.0 - 2.0 * odd);
    pe.push_back(2.0 * binomial_error(odd, shots));
  }
  ScanResult out;
  out.parameter = "phi_rad";
  out.grid.assign(phi_grid.begin(), phi_grid.end());
  out.shots = shots;
  out.seed = seed;
  out.add_series("p01_p10", std::move(q), std::move(qe));
  out.add_series("parity", std::move(par), std::move(pe));
  return out;
}

BellFidelity bell_fidelity(double p00, double p11, double amplitude) {
  if (!(p00 >= 0.0 && p00 <= 1.0) || !(p11 >= 0.0 && p11 <= 1.0)) {
    throw ValidationError("P00 and P11 must lie in [0, 1]");
  }
  if (!(amplitude >= -1.0 && amplitude <= 1.0)) throw ValidationError("parity amplitude must lie in [-1, 1]");
  BellFidelity f;
  f.raw = 0.5 * (p00 + p11) + 0.5 * std::abs(amplitude);
  f.physical = f.raw <= 1.0 + kValidationTol;
  f.value = std::min(f.raw, 1.0);
  return f;
}

BellExperiment bell_experiment(const DensityMatrix& prepared, std::span<const double> phi_grid, int shots,
                               std::uint64_t seed, const SpamModel& spam, const FitOptions& fit) {
  if (prepared.num_qudits() != 2) throw DimensionError("Bell experiment expects two ions");
  BellExperiment out;
  const auto f = camera_fractions(prepared, shots, derive_seed(seed, 0), spam);
  out.p00 = f[0];
  out.p11 = f[3];
  out.p00_sigma = binomial_error(f[0], shots);
  out.p11_sigma = binomial_error(f[3], shots);
  out.parity = parity_scan(prepared, phi_grid, shots, derive_seed(seed, 1), spam);
  FitOptions opts = fit;
  if (opts.seed == 0) opts.seed = derive_seed(seed, 2);
  out.fit = fit_parity(out.parity, "parity", opts);
  const double amp = out.fit.value("amplitude");
  out.fidelity = bell_fidelity(out.p00, out.p11, std::min(amp, 1.0));
  if (amp > 1.0) out.fidelity.physical = false;
  // (p00 + p11) is one multinomial cell pair, so var = s (1 - s) / n.
  const double s = out.p00 + out.p11;
  const double var_pop = shots > 0 ? s * (1.0 - s) / (4.0 * shots) : 0.0;
  out.fidelity_sigma = std::sqrt(var_pop + 0.25 * std::pow(out.fit.sigma("amplitude"), 2));
  const Dims& dims = prepared.dims();
  if (dims[0] == dims[1]) out.exact_fidelity = std::clamp(fidelity(prepared, bell_state(dims[0])), 0.0, 1.0);
  return out;
}

}  // namespace ququart
