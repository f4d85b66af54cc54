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
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "ququart/scan.hpp"

namespace ququart {

struct FitParameter {
  std::string name;
  double value = 0.0;
  double sigma = 0.0;            // analytic (binomial propagation or residual based)
  double sigma_bootstrap = 0.0;  // 0 when no bootstrap was run
};

/// Outcome of a model fit. When `converged` is false the parameters are
/// unreliable and only kept for inspection.
struct FitResult {
  std::string model;
  std::vector<FitParameter> params;
  double residual_norm = 0.0;
  bool converged = false;
  int iterations = 0;
  Eigen::MatrixXd covariance;  // of the free parameters, in `params` order
  /// One row per successful bootstrap refit, columns as `covariance`.
  Eigen::MatrixXd bootstrap_samples;

  const FitParameter& param(std::string_view name) const;
  double value(std::string_view name) const { return param(name).value; }
  double sigma(std::string_view name) const { return param(name).sigma; }
};

struct FitOptions {
  int max_iterations = 200;
  int bootstrap_resamples = 200;  // 0 disables the bootstrap
  std::uint64_t seed = 0;
};

/// y = A exp(-gamma t) sin(omega t + phi) + c.
double damped_sine(double t, double amplitude, double omega, double phase, double gamma, double offset);

/// Least-squares fit of the damped sine. `shots` is the number of shots per
/// point behind `y` (0 for exact data); it selects binomial error propagation
/// and enables the shot-level bootstrap. Parameters: amplitude (>= 0), omega,
/// phase in (-pi, pi], gamma, offset, and the derived decay_time = 1/gamma.
/// Throws ArgumentError on fewer than 8 points or mismatched lengths.
FitResult fit_damped_sine(std::span<const double> t, std::span<const double> y, int shots,
                          const FitOptions& options = {});
FitResult fit_damped_sine(const ScanResult& scan, std::string_view series, const FitOptions& options = {});

/// P(phi) = A sin(2 (phi + phi0)).
double parity_model(double phi, double amplitude, double phase);

/// Linear least-squares fit of the parity oscillation. Parameters:
/// amplitude A >= 0, phase phi0 in (-pi/2, pi/2], and coherence = A / 2.
/// Throws ArgumentError on fewer than 6 points.
FitResult fit_parity(std::span<const double> phi, std::span<const double> parity, int shots,
                     const FitOptions& options = {});
FitResult fit_parity(const ScanResult& scan, std::string_view series = "parity", const FitOptions& options = {});

}  // namespace ququart
