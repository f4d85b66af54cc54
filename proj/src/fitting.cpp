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

#include "ququart/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>

#include <unsupported/Eigen/LevenbergMarquardt>

#include "ququart/errors.hpp"
#include "ququart/rng.hpp"

namespace ququart {
namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;
constexpr double kPi = std::numbers::pi;
constexpr double kMinAmplitude = 1e-9;

double wrap_pi(double a) {
  a = std::remainder(a, 2.0 * kPi);
  return a <= -kPi ? a + 2.0 * kPi : a;
}

// Damped sine on the rescaled axis s = t / scale; x = [A, w, phi, g, c].
struct DampedSineFunctor : Eigen::DenseFunctor<double> {
  DampedSineFunctor(const VectorXd& s, const VectorXd& y)
      : Eigen::DenseFunctor<double>(5, static_cast<int>(s.size())), s_(s), y_(y) {}

  int operator()(const VectorXd& x, VectorXd& f) const {
    for (Eigen::Index i = 0; i < s_.size(); ++i) {
      f(i) = damped_sine(s_(i), x(0), x(1), x(2), x(3), x(4)) - y_(i);
    }
    return 0;
  }

  int df(const VectorXd& x, MatrixXd& j) const {
    jacobian(x, j);
    return 0;
  }

  void jacobian(const VectorXd& x, MatrixXd& j) const {
    j.resize(s_.size(), 5);
    for (Eigen::Index i = 0; i < s_.size(); ++i) {
      const double t = s_(i);
      const double e = std::exp(-x(3) * t);
      const double sn = std::sin(x(1) * t + x(2));
      const double cs = std::cos(x(1) * t + x(2));
      j(i, 0) = e * sn;
      j(i, 1) = x(0) * e * t * cs;
      j(i, 2) = x(0) * e * cs;
      j(i, 3) = -t * x(0) * e * sn;
      j(i, 4) = 1.0;
    }
  }

  VectorXd s_, y_;
};

struct LmOutcome {
  VectorXd x;
  double rss = 0.0;
  bool converged = false;
  int iterations = 0;
};

LmOutcome run_lm(const DampedSineFunctor& functor, VectorXd x, int max_iterations) {
  DampedSineFunctor f = functor;
  Eigen::LevenbergMarquardt<DampedSineFunctor> lm(f);
  lm.setXtol(1e-15);
  lm.setFtol(1e-15);
  lm.setGtol(0.0);
  lm.setMaxfev(100 * max_iterations);
  auto status = lm.minimizeInit(x);
  int it = 0;
  if (status != Eigen::LevenbergMarquardtSpace::ImproperInputParameters) {
    status = Eigen::LevenbergMarquardtSpace::Running;
    while (status == Eigen::LevenbergMarquardtSpace::Running && it < max_iterations) {
      status = lm.minimizeOneStep(x);
      ++it;
    }
  }
  using namespace Eigen::LevenbergMarquardtSpace;
  LmOutcome out;
  out.converged = status == RelativeReductionTooSmall || status == RelativeErrorTooSmall ||
                  status == RelativeErrorAndReductionTooSmall || status == CosinusTooSmall ||
                  status == FtolTooSmall || status == XtolTooSmall || status == GtolTooSmall;
  out.iterations = it;
  VectorXd r(functor.values());
  functor(x, r);
  out.rss = r.squaredNorm();
  out.converged = out.converged && x.allFinite();
  out.x = std::move(x);
  return out;
}

// A >= 0, omega >= 0, phase in (-pi, pi].
void canonicalize(VectorXd& x) {
  if (x(1) < 0.0) {
    x(1) = -x(1);
    x(2) = -x(2);
    x(0) = -x(0);
  }
  if (x(0) < 0.0) {
    x(0) = -x(0);
    x(2) += kPi;
  }
  x(2) = wrap_pi(x(2));
}

// Frequency (on the rescaled axis) of the largest periodogram peak of the
// mean-subtracted data.
double spectral_peak(const VectorXd& s, const VectorXd& y) {
  const double mean = y.mean();
  double min_gap = 1.0;
  for (Eigen::Index i = 1; i < s.size(); ++i) min_gap = std::min(min_gap, s(i) - s(i - 1));
  const double span = s.maxCoeff() - s.minCoeff();
  const double w_lo = kPi / span;
  const double w_hi = kPi / std::max(min_gap, 1e-12);
  const double step = w_lo / 16.0;
  double best_w = w_lo, best_p = -1.0;
  for (double w = w_lo; w <= w_hi; w += step) {
    std::complex<double> acc = 0.0;
    for (Eigen::Index i = 0; i < s.size(); ++i) acc += (y(i) - mean) * std::polar(1.0, -w * s(i));
    const double p = std::norm(acc);
    if (p > best_p) {
      best_p = p;
      best_w = w;
    }
  }
  return best_w;
}

// Linear least squares of y = a sin(w s) + b cos(w s) + c at fixed w.
VectorXd linear_start(const VectorXd& s, const VectorXd& y, double w) {
  MatrixXd design(s.size(), 3);
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    design(i, 0) = std::sin(w * s(i));
    design(i, 1) = std::cos(w * s(i));
    design(i, 2) = 1.0;
  }
  const VectorXd coef = design.colPivHouseholderQr().solve(y);
  VectorXd x(5);
  x << std::hypot(coef(0), coef(1)), w, std::atan2(coef(1), coef(0)), 0.0, coef(2);
  return x;
}

std::optional<MatrixXd> information_inverse(const MatrixXd& j) {
  // Column-normalize before judging conditioning.
  VectorXd norms = j.colwise().norm().transpose();
  if ((norms.array() <= 0.0).any()) return std::nullopt;
  const MatrixXd jn = j * norms.cwiseInverse().asDiagonal();
  const MatrixXd info = jn.transpose() * jn;
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(info);
  const double lo = es.eigenvalues().minCoeff();
  const double hi = es.eigenvalues().maxCoeff();
  if (!(lo > 1e-13 * hi)) return std::nullopt;
  const MatrixXd inv = es.eigenvectors() * es.eigenvalues().cwiseInverse().asDiagonal() *
                       es.eigenvectors().transpose();
  return norms.cwiseInverse().asDiagonal() * inv * norms.cwiseInverse().asDiagonal();
}

// Sandwich covariance with per-point variances, or s^2 (J^T J)^-1 when no
// variances are available.
std::optional<MatrixXd> covariance(const MatrixXd& j, const VectorXd& residual, const VectorXd* variances) {
  auto inv = information_inverse(j);
  if (!inv) return std::nullopt;
  if (variances) {
    const MatrixXd meat = j.transpose() * variances->asDiagonal() * j;
    return MatrixXd(*inv * meat * *inv);
  }
  const auto dof = std::max<Eigen::Index>(1, j.rows() - j.cols());
  return MatrixXd(*inv * (residual.squaredNorm() / static_cast<double>(dof)));
}

double sample_std(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

void check_lengths(std::span<const double> x, std::span<const double> y, std::size_t min_points) {
  if (x.size() != y.size()) throw ArgumentError("fit abscissa and data differ in length");
  if (x.size() < min_points) {
    throw ArgumentError("fit needs at least " + std::to_string(min_points) + " points, got " +
                        std::to_string(x.size()));
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i]) || !std::isfinite(y[i])) throw ArgumentError("fit data must be finite");
  }
}

bool all_probabilities(std::span<const double> y) {
  return std::all_of(y.begin(), y.end(), [](double v) { return v >= 0.0 && v <= 1.0; });
}

struct SineFit {
  VectorXd x;  // rescaled parameters
  double rss = 0.0;
  bool converged = false;
  int iterations = 0;
};

SineFit best_sine_fit(const VectorXd& s, const VectorXd& y, int max_iterations, const VectorXd* start) {
  const DampedSineFunctor functor(s, y);
  std::vector<VectorXd> starts;
  if (start) {
    starts.push_back(*start);
  } else {
    const VectorXd base = linear_start(s, y, spectral_peak(s, y));
    for (double dphi : {0.0, 2.0 * kPi / 3.0, -2.0 * kPi / 3.0}) {
      VectorXd x = base;
      x(2) += dphi;
      starts.push_back(x);
    }
  }
  SineFit best;
  bool have = false;
  for (const auto& x0 : starts) {
    LmOutcome o = run_lm(functor, x0, max_iterations);
    if (!o.x.allFinite()) continue;
    const bool better = !have || (o.converged && !best.converged) ||
                        (o.converged == best.converged && o.rss < best.rss);
    if (better) {
      best = {o.x, o.rss, o.converged, o.iterations};
      have = true;
    }
  }
  if (!have) {
    best.x = starts.front();
    best.rss = std::numeric_limits<double>::infinity();
  }
  canonicalize(best.x);
  return best;
}

}  // namespace

const FitParameter& FitResult::param(std::string_view name) const {
  for (const auto& p : params) {
    if (p.name == name) return p;
  }
  throw ArgumentError("fit has no parameter '" + std::string(name) + "'");
}

double damped_sine(double t, double amplitude, double omega, double phase, double gamma, double offset) {
  return amplitude * std::exp(-gamma * t) * std::sin(omega * t + phase) + offset;
}

FitResult fit_damped_sine(std::span<const double> t, std::span<const double> y, int shots,
                          const FitOptions& options) {
  check_lengths(t, y, 8);
  if (shots < 0) throw ArgumentError("shots must be >= 0");
  const double scale = *std::max_element(t.begin(), t.end());
  if (!(scale > 0.0)) throw ArgumentError("fit abscissa must extend above zero");
  const auto n = static_cast<Eigen::Index>(t.size());
  VectorXd s(n), yv(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    s(i) = t[static_cast<std::size_t>(i)] / scale;
    yv(i) = y[static_cast<std::size_t>(i)];
  }

  const SineFit best = best_sine_fit(s, yv, options.max_iterations, nullptr);
  const DampedSineFunctor functor(s, yv);
  VectorXd r(n);
  functor(best.x, r);
  MatrixXd j;
  functor.jacobian(best.x, j);

  const bool binomial_data = shots > 0 && all_probabilities(y);
  VectorXd var(n);
  if (binomial_data) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const double m = std::clamp(r(i) + yv(i), 0.0, 1.0);
      var(i) = std::max(m * (1.0 - m), 0.25 / (static_cast<double>(shots) * shots)) / shots;
    }
  }
  const auto cov = covariance(j, r, binomial_data ? &var : nullptr);

  FitResult res;
  res.model = "damped_sine";
  res.residual_norm = std::sqrt(best.rss);
  res.iterations = best.iterations;

  // Back to physical units: omega and gamma scale by 1/scale.
  const VectorXd unit = (VectorXd(5) << 1.0, 1.0 / scale, 1.0, 1.0 / scale, 1.0).finished();
  const VectorXd x = best.x.cwiseProduct(unit);
  res.covariance = cov ? MatrixXd(unit.asDiagonal() * *cov * unit.asDiagonal()) : MatrixXd::Zero(5, 5);

  // An oscillation is resolved only with a significant amplitude and at
  // least half a period inside the sampled window; otherwise amplitude,
  // frequency and offset trade off against each other.
  const double span = scale - *std::min_element(t.begin(), t.end());
  const double amp_sigma = std::sqrt(std::max(0.0, res.covariance(0, 0)));
  const bool resolved = x(0) > kMinAmplitude && x(0) > 2.0 * amp_sigma && x(1) * span >= kPi;
  res.converged = best.converged && cov.has_value() && resolved;

  const char* names[] = {"amplitude", "omega", "phase", "gamma", "offset"};
  for (int k = 0; k < 5; ++k) {
    res.params.push_back({names[k], x(k), std::sqrt(std::max(0.0, res.covariance(k, k))), 0.0});
  }

  if (binomial_data && options.bootstrap_resamples > 0 && res.converged) {
    std::vector<std::vector<double>> samples(5);
    const SplitMix64 root(options.seed);
    for (int b = 0; b < options.bootstrap_resamples; ++b) {
      SplitMix64 rng = root.split(static_cast<std::uint64_t>(b));
      VectorXd yb(n);
      for (Eigen::Index i = 0; i < n; ++i) yb(i) = static_cast<double>(binomial(rng, shots, yv(i))) / shots;
      const SineFit fb = best_sine_fit(s, yb, options.max_iterations, &best.x);
      if (!fb.converged) continue;
      VectorXd xb = fb.x.cwiseProduct(unit);
      xb(2) = best.x(2) + wrap_pi(xb(2) - best.x(2));
      for (int k = 0; k < 5; ++k) samples[static_cast<std::size_t>(k)].push_back(xb(k));
    }
    const auto rows = static_cast<Eigen::Index>(samples[0].size());
    res.bootstrap_samples.resize(rows, 5);
    for (int k = 0; k < 5; ++k) {
      const auto& col = samples[static_cast<std::size_t>(k)];
      res.params[static_cast<std::size_t>(k)].sigma_bootstrap = sample_std(col);
      for (Eigen::Index r = 0; r < rows; ++r) res.bootstrap_samples(r, k) = col[static_cast<std::size_t>(r)];
    }
  }

  const auto& g = res.params[3];
  FitParameter decay{"decay_time", g.value != 0.0 ? 1.0 / g.value : std::numeric_limits<double>::infinity(),
                     g.value != 0.0 ? g.sigma / (g.value * g.value) : 0.0,
                     g.value != 0.0 ? g.sigma_bootstrap / (g.value * g.value) : 0.0};
  res.params.push_back(decay);
  return res;
}

FitResult fit_damped_sine(const ScanResult& scan, std::string_view series, const FitOptions& options) {
  return fit_damped_sine(scan.grid, scan.column(series), scan.shots, options);
}

double parity_model(double phi, double amplitude, double phase) {
  return amplitude * std::sin(2.0 * (phi + phase));
}

namespace {

struct ParityCoef {
  double a = 0.0, b = 0.0;
  bool ok = false;
  MatrixXd inv;
  MatrixXd design;
};

ParityCoef parity_solve(const VectorXd& phi, const VectorXd& y) {
  ParityCoef out;
  out.design.resize(phi.size(), 2);
  for (Eigen::Index i = 0; i < phi.size(); ++i) {
    out.design(i, 0) = std::sin(2.0 * phi(i));
    out.design(i, 1) = std::cos(2.0 * phi(i));
  }
  auto inv = information_inverse(out.design);
  if (!inv) return out;
  const VectorXd coef = *inv * (out.design.transpose() * y);
  out.a = coef(0);
  out.b = coef(1);
  out.inv = *inv;
  out.ok = true;
  return out;
}

}  // namespace

FitResult fit_parity(std::span<const double> phi, std::span<const double> parity, int shots,
                     const FitOptions& options) {
  check_lengths(phi, parity, 6);
  if (shots < 0) throw ArgumentError("shots must be >= 0");
  const auto n = static_cast<Eigen::Index>(phi.size());
  VectorXd pv(n), yv(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    pv(i) = phi[static_cast<std::size_t>(i)];
    yv(i) = parity[static_cast<std::size_t>(i)];
  }
  const ParityCoef fit = parity_solve(pv, yv);

  FitResult res;
  res.model = "parity";
  res.iterations = 1;
  res.converged = fit.ok;
  // a = A cos(2 phi0), b = A sin(2 phi0).
  const double amp = std::hypot(fit.a, fit.b);
  double phase = 0.5 * std::atan2(fit.b, fit.a);
  if (phase <= -kPi / 2.0) phase += kPi;
  const VectorXd r = fit.ok ? VectorXd(fit.design * Eigen::Vector2d(fit.a, fit.b) - yv) : VectorXd(-yv);
  res.residual_norm = r.norm();

  Eigen::Matrix2d cov_ab = Eigen::Matrix2d::Zero();
  const bool binomial_data =
      shots > 0 && std::all_of(parity.begin(), parity.end(), [](double v) { return v >= -1.0 && v <= 1.0; });
  if (fit.ok) {
    if (binomial_data) {
      VectorXd var(n);
      for (Eigen::Index i = 0; i < n; ++i) {
        const double q = std::clamp(0.5 * (1.0 - (yv(i) + r(i))), 0.0, 1.0);
        var(i) = 4.0 * std::max(q * (1.0 - q), 0.25 / (static_cast<double>(shots) * shots)) / shots;
      }
      cov_ab = fit.inv * (fit.design.transpose() * var.asDiagonal() * fit.design) * fit.inv;
    } else {
      const double dof = static_cast<double>(std::max<Eigen::Index>(1, n - 2));
      cov_ab = fit.inv * (r.squaredNorm() / dof);
    }
  }
  // Delta method through (A, phi0) = (hypot(a, b), atan2(b, a) / 2).
  Eigen::Matrix2d jac = Eigen::Matrix2d::Zero();
  if (amp > 0.0) {
    jac << fit.a / amp, fit.b / amp, -0.5 * fit.b / (amp * amp), 0.5 * fit.a / (amp * amp);
  }
  res.covariance = jac * cov_ab * jac.transpose();
  res.params.push_back({"amplitude", amp, std::sqrt(std::max(0.0, res.covariance(0, 0))), 0.0});
  res.params.push_back({"phase", phase, std::sqrt(std::max(0.0, res.covariance(1, 1))), 0.0});

  if (binomial_data && fit.ok && options.bootstrap_resamples > 0) {
    std::vector<double> amps, phases;
    const SplitMix64 root(options.seed);
    for (int b = 0; b < options.bootstrap_resamples; ++b) {
      SplitMix64 rng = root.split(static_cast<std::uint64_t>(b));
      VectorXd yb(n);
      for (Eigen::Index i = 0; i < n; ++i) {
        const double q = std::clamp(0.5 * (1.0 - yv(i)), 0.0, 1.0);
        yb(i) = 1.0 - 2.0 * static_cast<double>(binomial(rng, shots, q)) / shots;
      }
      const ParityCoef fb = parity_solve(pv, yb);
      if (!fb.ok) continue;
      amps.push_back(std::hypot(fb.a, fb.b));
      double ph = 0.5 * std::atan2(fb.b, fb.a);
      ph = phase + std::remainder(ph - phase, kPi);
      phases.push_back(ph);
    }
    res.params[0].sigma_bootstrap = sample_std(amps);
    res.bootstrap_samples.resize(static_cast<Eigen::Index>(amps.size()), 2);
    for (std::size_t r = 0; r < amps.size(); ++r) {
      res.bootstrap_samples(static_cast<Eigen::Index>(r), 0) = amps[r];
      res.bootstrap_samples(static_cast<Eigen::Index>(r), 1) = phases[r];
    }
    res.params[1].sigma_bootstrap = sample_std(phases);
  }
  const auto& a = res.params[0];
  res.params.push_back({"coherence", a.value / 2.0, a.sigma / 2.0, a.sigma_bootstrap / 2.0});
  return res;
}

FitResult fit_parity(const ScanResult& scan, std::string_view series, const FitOptions& options) {
  return fit_parity(scan.grid, scan.column(series), scan.shots, options);
}

}  // namespace ququart
