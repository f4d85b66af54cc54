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

#include "ququart/ms_dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <string>

#include <boost/numeric/odeint.hpp>

#include "ququart/errors.hpp"

namespace ququart {
namespace {

using std::numbers::pi;
constexpr Complex kI{0.0, 1.0};

// Weights below this are dropped from thermal sums and trajectory ensembles.
constexpr double kNegligibleWeight = 1e-16;

void check_two_ions(const Dims& dims) {
  if (dims.size() != 2) throw DimensionError("MS dynamics needs a two-qudit register");
  register_size(dims);
}

// <m| D(beta) |n> in closed form (generalised Laguerre polynomials).
Complex displacement_element(int m, int n, Complex beta) {
  const double x = std::norm(beta);
  const double env = std::exp(-0.5 * x);
  if (m >= n) {
    const int k = m - n;
    Complex p = 1.0;
    for (int i = 0; i < k; ++i) p *= beta;
    const double norm = std::exp(0.5 * (std::lgamma(n + 1.0) - std::lgamma(m + 1.0)));
    return norm * p * env * std::assoc_laguerre(static_cast<unsigned>(n), static_cast<unsigned>(k), x);
  }
  const int k = n - m;
  Complex p = 1.0;
  for (int i = 0; i < k; ++i) p *= -std::conj(beta);
  const double norm = std::exp(0.5 * (std::lgamma(m + 1.0) - std::lgamma(n + 1.0)));
  return norm * p * env * std::assoc_laguerre(static_cast<unsigned>(m), static_cast<unsigned>(k), x);
}

double coupling(const PulseParams& p, int n) {
  const double g = 0.5 * p.eta * p.omega_rabi;
  return p.debye_waller ? g * debye_waller_factor(p.eta, n) : g;
}

Complex alpha_of(double g, double delta, double t) { return (g / delta) * (std::exp(-kI * (delta * t)) - 1.0); }

double phi_of(double g, double delta, double t) { return (g * g / delta) * (t - std::sin(delta * t) / delta); }

// X01 eigenbasis of one qudit: columns |+>, |->, |2>, ... with eigenvalues 1, -1, 0, ...
Matrix x01_eigenbasis(int d, std::vector<int>& eig) {
  Matrix v = Matrix::Identity(d, d);
  const double r = std::sqrt(0.5);
  v(0, 0) = r;
  v(1, 0) = r;
  v(0, 1) = r;
  v(1, 1) = -r;
  eig.assign(static_cast<std::size_t>(d), 0);
  eig[0] = 1;
  eig[1] = -1;
  return v;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

// S_x on the two-ion register as a list of (row, col) unit entries.
std::vector<std::pair<int, int>> sx_entries(int da, int db) {
  std::vector<std::pair<int, int>> out;
  for (int a = 0; a < da; ++a) {
    for (int b = 0; b < db; ++b) {
      const int col = a * db + b;
      if (a < 2) out.emplace_back((1 - a) * db + b, col);
      if (b < 2) out.emplace_back(a * db + (1 - b), col);
    }
  }
  return out;
}

DensityMatrix finish(const Dims& dims, Matrix rho) {
  rho = 0.5 * (rho + rho.adjoint());
  rho /= rho.trace().real();
  return DensityMatrix(dims, std::move(rho), Unchecked{});
}

}  // namespace

void PulseParams::validate() const {
  if (!(eta > 0.0) || eta > kMaxLambDicke) {
    throw ValidationError("Lamb-Dicke parameter must lie in (0, 0.3], got " + std::to_string(eta));
  }
  if (!(delta > 0.0)) throw ValidationError("detuning delta must be positive");
  if (!(tau > 0.0)) throw ValidationError("pulse duration tau must be positive");
  if (!(omega_rabi > 0.0)) throw ValidationError("Rabi frequency must be positive");
  if (!(omega_m > 0.0)) throw ValidationError("mode frequency must be positive");
  if (carrier_fraction < 0.0 || !std::isfinite(carrier_fraction)) {
    throw ValidationError("carrier fraction must be a finite non-negative number");
  }
}

double thermal_tail_mass(double nbar, int fock_cutoff) {
  if (nbar <= 0.0) return 0.0;
  const double q = nbar / (nbar + 1.0);
  return std::pow(q, fock_cutoff + 1);
}

int thermal_fock_cutoff(double nbar) {
  int n = kDefaultFockCutoff;
  while (thermal_tail_mass(nbar, n) > kMaxThermalTail) ++n;
  return n;
}

MotionState MotionState::thermal(double nbar) { return thermal(nbar, thermal_fock_cutoff(nbar)); }

MotionState MotionState::thermal(double nbar, int fock_cutoff) {
  if (!(nbar >= 0.0) || !std::isfinite(nbar)) throw ValidationError("mean phonon number must be >= 0");
  if (fock_cutoff < 0) throw ValidationError("Fock cutoff must be >= 0");
  const double tail = thermal_tail_mass(nbar, fock_cutoff);
  if (tail > kMaxThermalTail) {
    throw ValidationError("Fock cutoff " + std::to_string(fock_cutoff) + " leaves thermal tail mass " +
                          std::to_string(tail) + " > 1e-8 for nbar=" + std::to_string(nbar) +
                          "; use a cutoff of at least " + std::to_string(thermal_fock_cutoff(nbar)));
  }
  const int dim = fock_cutoff + 1;
  Matrix rho = Matrix::Zero(dim, dim);
  const double q = nbar / (nbar + 1.0);
  double w = 1.0;
  double total = 0.0;
  for (int n = 0; n < dim; ++n) {
    rho(n, n) = w;
    total += w;
    w *= q;
  }
  rho /= total;
  return MotionState(true, nbar, std::move(rho));
}

MotionState MotionState::explicit_state(Matrix rho) {
  validate_density(rho);
  double nbar = 0.0;
  for (Eigen::Index n = 0; n < rho.rows(); ++n) nbar += static_cast<double>(n) * rho(n, n).real();
  return MotionState(false, nbar, std::move(rho));
}

std::vector<double> MotionState::fock_populations() const {
  std::vector<double> p(static_cast<std::size_t>(rho_.rows()));
  for (Eigen::Index n = 0; n < rho_.rows(); ++n) p[static_cast<std::size_t>(n)] = rho_(n, n).real();
  return p;
}

bool MotionState::is_fock_diagonal() const {
  if (thermal_) return true;
  Matrix off = rho_;
  off.diagonal().setZero();
  return off.cwiseAbs().maxCoeff() <= kValidationTol;
}

double debye_waller_factor(double eta, int n) {
  const double x = eta * eta;
  return std::exp(-0.5 * x) * std::assoc_laguerre(static_cast<unsigned>(n), 1u, x) / (n + 1.0);
}

double lamb_dicke_parameter(double wavelength_m, double mass_amu, double omega_m, double participation) {
  constexpr double kHbar = 1.054571817e-34;
  constexpr double kAmu = 1.66053906660e-27;
  if (!(wavelength_m > 0.0) || !(mass_amu > 0.0) || !(omega_m > 0.0)) {
    throw ValidationError("Lamb-Dicke parameter needs positive wavelength, mass and mode frequency");
  }
  const double k = 2.0 * pi / wavelength_m;
  const double x0 = std::sqrt(kHbar / (2.0 * mass_amu * kAmu * omega_m));
  return k * x0 * participation;
}

PulseParams solve_gate_params(double eta, double delta, double omega_m, bool debye_waller) {
  PulseParams p;
  p.eta = eta;
  p.delta = delta;
  p.omega_m = omega_m;
  p.debye_waller = debye_waller;
  p.tau = delta > 0.0 ? 2.0 * pi / delta : 0.0;
  const double f0 = debye_waller ? debye_waller_factor(eta, 0) : 1.0;
  p.omega_rabi = eta > 0.0 ? delta / (2.0 * eta * f0) : 0.0;
  p.validate();
  return p;
}

PulseParams gate_params_for_duration(double eta, double tau, double omega_m, bool debye_waller) {
  if (!(tau > 0.0)) throw ValidationError("gate duration must be positive");
  return solve_gate_params(eta, 2.0 * pi / tau, omega_m, debye_waller);
}

double ms_gate_angle(const PulseParams& params, double t, int n) {
  return 2.0 * phi_of(coupling(params, n), params.delta, t);
}

DensityMatrix evolve_ms(const DensityMatrix& spin, const MotionState& motion, const PulseParams& params, double t) {
  check_two_ions(spin.dims());
  params.validate();
  if (!(t >= 0.0)) throw ArgumentError("evolution time must be >= 0");
  if (params.carrier_fraction != 0.0) {
    throw ArgumentError("carrier leakage has no closed form; use evolve_ms_numeric");
  }
  const bool diagonal = motion.is_fock_diagonal();
  if (params.debye_waller && !diagonal) {
    throw ArgumentError("Debye-Waller renormalisation needs a Fock-diagonal motional state");
  }
  const int da = spin.dims()[0];
  const int db = spin.dims()[1];
  std::vector<int> ea, eb;
  const Matrix v = kron(x01_eigenbasis(da, ea), x01_eigenbasis(db, eb));
  std::vector<int> s(static_cast<std::size_t>(da * db));
  for (int a = 0; a < da; ++a) {
    for (int b = 0; b < db; ++b) s[static_cast<std::size_t>(a * db + b)] = ea[a] + eb[b];
  }

  const std::vector<double> pn = motion.fock_populations();
  const Matrix& rm = motion.density();
  // Motional factor for each (s_j - s_k, s_j^2 - s_k^2).
  std::map<std::pair<int, int>, Complex> cache;
  auto factor = [&](int ds, int ds2) -> Complex {
    const auto key = std::make_pair(ds, ds2);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    Complex acc = 0.0;
    if (diagonal) {
      for (std::size_t n = 0; n < pn.size(); ++n) {
        if (pn[n] < kNegligibleWeight) continue;
        const double g = coupling(params, static_cast<int>(n));
        const Complex beta = alpha_of(g, params.delta, t) * static_cast<double>(ds);
        const double ph = phi_of(g, params.delta, t) * ds2;
        acc += pn[n] * std::exp(-kI * ph) *
               std::exp(-0.5 * std::norm(beta)) * std::laguerre(static_cast<unsigned>(n), std::norm(beta));
      }
    } else {
      const double g = coupling(params, 0);
      const Complex beta = alpha_of(g, params.delta, t) * static_cast<double>(ds);
      for (Eigen::Index m = 0; m < rm.rows(); ++m) {
        for (Eigen::Index n = 0; n < rm.cols(); ++n) {
          if (std::abs(rm(m, n)) < kNegligibleWeight) continue;
          acc += rm(m, n) * displacement_element(static_cast<int>(n), static_cast<int>(m), beta);
        }
      }
      acc *= std::exp(-kI * (phi_of(g, params.delta, t) * ds2));
    }
    cache.emplace(key, acc);
    return acc;
  };

  Matrix r = v.adjoint() * spin.elements() * v;
  for (Eigen::Index j = 0; j < r.rows(); ++j) {
    for (Eigen::Index k = 0; k < r.cols(); ++k) {
      const int sj = s[static_cast<std::size_t>(j)];
      const int sk = s[static_cast<std::size_t>(k)];
      if (sj == sk) continue;
      r(j, k) *= factor(sj - sk, sj * sj - sk * sk);
    }
  }
  return finish(spin.dims(), v * r * v.adjoint());
}

DensityMatrix evolve_ms(const QuditState& spin, const MotionState& motion, const PulseParams& params, double t) {
  return evolve_ms(DensityMatrix::from_state(spin), motion, params, t);
}

std::vector<DensityMatrix> evolve_ms_numeric(const DensityMatrix& spin, const MotionState& motion,
                                             const PulseParams& params, std::span<const double> times,
                                             const IntegratorOptions& opts) {
  namespace odeint = boost::numeric::odeint;
  using State = std::vector<Complex>;

  check_two_ions(spin.dims());
  params.validate();
  if (!(opts.tolerance > 0.0)) throw ArgumentError("integrator tolerance must be positive");
  if (opts.fock_margin < 0) throw ArgumentError("Fock margin must be >= 0");
  if (times.empty()) return {};
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!(times[i] >= 0.0)) throw ArgumentError("evolution times must be >= 0");
    if (i > 0 && times[i] < times[i - 1]) throw ArgumentError("evolution times must be non-decreasing");
  }
  const bool diagonal = motion.is_fock_diagonal();
  if (params.debye_waller && !diagonal) {
    throw ArgumentError("Debye-Waller renormalisation needs a Fock-diagonal motional state");
  }

  const int da = spin.dims()[0];
  const int db = spin.dims()[1];
  const int ns = da * db;
  const int nf = motion.fock_cutoff() + 1 + opts.fock_margin;
  const auto sx = sx_entries(da, db);

  // Distinct output times, always starting at t = 0.
  std::vector<double> grid{0.0};
  for (double t : times) {
    if (t > grid.back()) grid.push_back(t);
  }
  std::vector<Matrix> acc(grid.size(), Matrix::Zero(ns, ns));

  // Initial product-state ensemble.
  Eigen::SelfAdjointEigenSolver<Matrix> spin_es(spin.elements());
  std::vector<std::pair<double, Vector>> motional;
  if (diagonal) {
    const auto pn = motion.fock_populations();
    for (int n = 0; n <= motion.fock_cutoff(); ++n) {
      Vector e = Vector::Zero(motion.fock_cutoff() + 1);
      e(n) = 1.0;
      motional.emplace_back(pn[static_cast<std::size_t>(n)], std::move(e));
    }
  } else {
    Eigen::SelfAdjointEigenSolver<Matrix> m_es(motion.density());
    for (Eigen::Index i = 0; i < m_es.eigenvalues().size(); ++i) {
      motional.emplace_back(m_es.eigenvalues()(i), m_es.eigenvectors().col(i));
    }
  }

  const double delta = params.delta;
  const double carrier = params.carrier_fraction * params.omega_rabi;
  const double carrier_freq = params.omega_m + params.delta;

  for (std::size_t mi = 0; mi < motional.size(); ++mi) {
    const double wm = motional[mi].first;
    if (wm < kNegligibleWeight) continue;
    // Per-Fock coupling only applies to Fock-state trajectories.
    const double g = coupling(params, diagonal ? static_cast<int>(mi) : 0);

    auto rhs = [&](const State& x, State& dxdt, double t) {
      std::fill(dxdt.begin(), dxdt.end(), Complex{});
      const Complex ep = std::exp(kI * (delta * t));
      const Complex em = std::conj(ep);
      // Motional operator m = a e^{i delta t} + a^dagger e^{-i delta t}.
      const Complex cm = -kI * g;
      const Complex cc = -kI * carrier * std::cos(carrier_freq * t);
      for (const auto& [row, col] : sx) {
        const Complex* src = x.data() + static_cast<std::ptrdiff_t>(col) * nf;
        Complex* dst = dxdt.data() + static_cast<std::ptrdiff_t>(row) * nf;
        for (int n = 0; n < nf; ++n) {
          Complex v = 0.0;
          if (n + 1 < nf) v += ep * std::sqrt(static_cast<double>(n + 1)) * src[n + 1];
          if (n > 0) v += em * std::sqrt(static_cast<double>(n)) * src[n - 1];
          dst[n] += cm * v;
          if (carrier != 0.0) dst[n] += cc * src[n];
        }
      }
    };

    for (Eigen::Index si = 0; si < spin_es.eigenvalues().size(); ++si) {
      const double ws = spin_es.eigenvalues()(si);
      if (ws * wm < kNegligibleWeight) continue;
      const Vector& psi_s = spin_es.eigenvectors().col(si);
      const Vector& psi_m = motional[mi].second;
      State x(static_cast<std::size_t>(ns * nf), Complex{});
      for (int a = 0; a < ns; ++a) {
        for (Eigen::Index n = 0; n < psi_m.size(); ++n) {
          x[static_cast<std::size_t>(a * nf + n)] = psi_s(a) * psi_m(n);
        }
      }
      std::size_t k = 0;
      auto observe = [&](const State& y, double) {
        Matrix& out = acc[k++];
        for (int i = 0; i < ns; ++i) {
          for (int j = 0; j < ns; ++j) {
            Complex sum = 0.0;
            for (int n = 0; n < nf; ++n) sum += y[i * nf + n] * std::conj(y[j * nf + n]);
            out(i, j) += ws * wm * sum;
          }
        }
      };
      if (grid.size() == 1) {
        observe(x, 0.0);
        continue;
      }
      auto stepper = odeint::make_controlled(opts.tolerance, opts.tolerance, odeint::runge_kutta_dopri5<State>());
      const double dt0 = std::min(grid[1], 2.0 * pi / delta) * 1e-3;
      odeint::integrate_times(stepper, rhs, x, grid.begin(), grid.end(), dt0, observe);
      if (k != grid.size()) throw NumericalError("integrator did not reach every output time");
    }
  }

  std::vector<DensityMatrix> out;
  out.reserve(times.size());
  for (double t : times) {
    const auto it = std::find(grid.begin(), grid.end(), t);
    out.push_back(finish(spin.dims(), acc[static_cast<std::size_t>(it - grid.begin())]));
  }
  return out;
}

DensityMatrix evolve_ms_numeric(const DensityMatrix& spin, const MotionState& motion, const PulseParams& params,
                                double t, const IntegratorOptions& opts) {
  const double ts[] = {t};
  return evolve_ms_numeric(spin, motion, params, ts, opts).front();
}

DensityMatrix evolve_ms_numeric(const QuditState& spin, const MotionState& motion, const PulseParams& params,
                                double t, const IntegratorOptions& opts) {
  return evolve_ms_numeric(DensityMatrix::from_state(spin), motion, params, t, opts);
}

ScanResult population_scan(const PulseParams& params, std::span<const double> tau_grid, const MotionState& motion,
                           int qudit_dim) {
  ScanResult out;
  out.parameter = "tau_s";
  out.grid.assign(tau_grid.begin(), tau_grid.end());
  const QuditState start = basis_state({qudit_dim, qudit_dim}, {0, 0});
  const auto at = [qudit_dim](int a, int b) { return static_cast<std::size_t>(a * qudit_dim + b); };
  std::vector<double> p00, p1, p11;
  for (double tau : tau_grid) {
    const auto pop = populations(evolve_ms(start, motion, params, tau));
    p00.push_back(pop[at(0, 0)]);
    p1.push_back(pop[at(0, 1)] + pop[at(1, 0)]);
    p11.push_back(pop[at(1, 1)]);
  }
  const std::vector<double> zero(tau_grid.size(), 0.0);
  out.add_series("p00", std::move(p00), zero);
  out.add_series("p01_p10", std::move(p1), zero);
  out.add_series("p11", std::move(p11), zero);
  out.validate();
  return out;
}

QuditState bell_state(int qudit_dim) {
  Vector v = Vector::Zero(qudit_dim * qudit_dim);
  v(0) = std::sqrt(0.5);
  v(qudit_dim + 1) = -kI * std::sqrt(0.5);
  return QuditState({qudit_dim, qudit_dim}, std::move(v));
}

}  // namespace ququart
