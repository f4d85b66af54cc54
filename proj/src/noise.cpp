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

#include "ququart/noise.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

#include "ququart/errors.hpp"

namespace ququart {
namespace {

constexpr Complex kI{0.0, 1.0};

bool probability(double p) { return p >= 0.0 && p <= 1.0; }

std::vector<std::size_t> strides_of(const Dims& dims) {
  std::vector<std::size_t> strides(dims.size());
  std::size_t s = 1;
  for (std::size_t i = dims.size(); i-- > 0;) {
    strides[i] = s;
    s *= static_cast<std::size_t>(dims[i]);
  }
  return strides;
}

// Applies a d^2 x d^2 superoperator (column-stacked vec, index i + j d) to
// one ion of a multi-ion density matrix.
Matrix apply_superop(const Matrix& rho, const Dims& dims, int ion, const Matrix& s) {
  const auto strides = strides_of(dims);
  const std::size_t stride = strides[static_cast<std::size_t>(ion)];
  const int d = dims[static_cast<std::size_t>(ion)];
  std::vector<std::size_t> bases;
  for (std::size_t idx = 0; idx < static_cast<std::size_t>(rho.rows()); ++idx) {
    if ((idx / stride) % static_cast<std::size_t>(d) == 0) bases.push_back(idx);
  }
  Matrix out(rho.rows(), rho.cols());
  Vector v(d * d);
  for (std::size_t b1 : bases) {
    for (std::size_t b2 : bases) {
      for (int j = 0; j < d; ++j) {
        for (int i = 0; i < d; ++i) {
          v(i + j * d) = rho(static_cast<Eigen::Index>(b1 + i * stride), static_cast<Eigen::Index>(b2 + j * stride));
        }
      }
      const Vector w = s * v;
      for (int j = 0; j < d; ++j) {
        for (int i = 0; i < d; ++i) {
          out(static_cast<Eigen::Index>(b1 + i * stride), static_cast<Eigen::Index>(b2 + j * stride)) = w(i + j * d);
        }
      }
    }
  }
  return out;
}

}  // namespace

void SpamModel::validate() const {
  if (!probability(bright_as_dark) || !probability(dark_as_bright) || !probability(transfer_error)) {
    throw ValidationError("SPAM probabilities must lie in [0, 1]");
  }
}

void NoiseModel::validate() const {
  for (double r : level_dephasing) {
    if (!(r >= 0.0) || !std::isfinite(r)) throw ValidationError("level dephasing rates must be finite and >= 0");
  }
  if (!(laser_dephasing >= 0.0) || !std::isfinite(laser_dephasing)) {
    throw ValidationError("laser dephasing rate must be finite and >= 0");
  }
  if (!(crosstalk >= 0.0) || crosstalk > kMaxCrosstalk) {
    throw ValidationError("cross-talk fraction must lie in [0, 0.2]");
  }
  spam.validate();
}

double NoiseModel::coherence_decay_rate(int i, int j) const {
  if (i == j) return 0.0;
  auto level = [this](int l) {
    return l < static_cast<int>(level_dephasing.size()) ? level_dephasing[static_cast<std::size_t>(l)] : 0.0;
  };
  double g = 0.5 * (level(i) + level(j));
  if ((i == 0) != (j == 0)) g += 0.5 * laser_dephasing;
  return g;
}

std::vector<double> default_field_sensitivity(int d) {
  std::vector<double> s(static_cast<std::size_t>(d), kLevelFieldSensitivity);
  for (int l = 0; l < std::min(d, 2); ++l) s[static_cast<std::size_t>(l)] = 0.0;
  return s;
}

std::vector<double> magnetic_dephasing_rates(std::span<const double> sensitivity, double field_psd) {
  if (!(field_psd >= 0.0)) throw ValidationError("field noise PSD must be >= 0");
  std::vector<double> out;
  out.reserve(sensitivity.size());
  for (double s : sensitivity) out.push_back(2.0 * std::numbers::pi * std::numbers::pi * s * s * field_psd);
  return out;
}

DensityMatrix apply_dephasing(const DensityMatrix& rho, const NoiseModel& noise, double duration) {
  if (!(duration >= 0.0)) throw ArgumentError("dephasing duration must be >= 0");
  noise.validate();
  const Dims& dims = rho.dims();
  const auto n = rho.size();
  std::vector<std::vector<int>> digits(n);
  for (std::size_t i = 0; i < n; ++i) digits[i] = unflatten(dims, i);
  Matrix out = rho.elements();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      double rate = 0.0;
      for (std::size_t q = 0; q < dims.size(); ++q) rate += noise.coherence_decay_rate(digits[i][q], digits[j][q]);
      if (rate != 0.0) out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) *= std::exp(-rate * duration);
    }
  }
  return DensityMatrix(dims, std::move(out), Unchecked{});
}

std::vector<Rotation> crosstalk_expand(const Rotation& rotation, double epsilon, int num_ions) {
  if (!(epsilon >= 0.0) || epsilon > kMaxCrosstalk) throw ValidationError("cross-talk fraction must lie in [0, 0.2]");
  if (rotation.ion < 0 || rotation.ion >= num_ions) throw DimensionError("addressed ion out of range");
  std::vector<Rotation> out{rotation};
  if (epsilon == 0.0) return out;
  for (int neighbour : {rotation.ion - 1, rotation.ion + 1}) {
    if (neighbour < 0 || neighbour >= num_ions) continue;
    Rotation r = rotation;
    r.ion = neighbour;
    r.theta = epsilon * rotation.theta;
    out.push_back(r);
  }
  return out;
}

DensityMatrix apply_driven_rotation(const DensityMatrix& rho, const Rotation& rotation, double rabi_frequency,
                                    const NoiseModel& noise) {
  if (!(rabi_frequency > 0.0)) throw ValidationError("Rabi frequency must be positive");
  noise.validate();
  if (rotation.ion < 0 || rotation.ion >= rho.num_qudits()) throw DimensionError("rotation ion out of range");
  const int d = rho.dims()[static_cast<std::size_t>(rotation.ion)];
  const Matrix u = rotation_matrix(rotation, d);
  const int targets[] = {rotation.ion};

  bool noiseless = true;
  for (int i = 0; i < d && noiseless; ++i) {
    for (int j = 0; j < d; ++j) {
      if (noise.coherence_decay_rate(i, j) != 0.0) {
        noiseless = false;
        break;
      }
    }
  }
  if (noiseless) return apply_unitary(rho, u, targets);
  if (rotation.theta == 0.0) return rho;

  // R(phi, theta) = exp(-i H t) with H = (Omega/2)(e^{-i phi}|lo><up| + h.c.)
  // and t = |theta| / Omega; negative theta is phi + pi.
  const double phi = rotation.theta < 0.0 ? rotation.phi + std::numbers::pi : rotation.phi;
  const double t = std::abs(rotation.theta) / rabi_frequency;
  Matrix h = Matrix::Zero(d, d);
  h(rotation.lower, rotation.upper) = 0.5 * rabi_frequency * std::exp(-kI * phi);
  h(rotation.upper, rotation.lower) = 0.5 * rabi_frequency * std::exp(kI * phi);
  const Matrix id = Matrix::Identity(d, d);
  Matrix gen = Matrix::Zero(d * d, d * d);
  // vec(H rho) = (1 (x) H) vec(rho), vec(rho H) = (H^T (x) 1) vec(rho).
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      gen.block(a * d, a * d, d, d) += (a == b ? 1.0 : 0.0) * (-kI) * h;
      gen.block(a * d, b * d, d, d) += kI * h(b, a) * id;
    }
  }
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i < d; ++i) gen(i + j * d, i + j * d) -= noise.coherence_decay_rate(i, j);
  }
  const Matrix prop = (gen * t).exp();
  Matrix out = apply_superop(rho.elements(), rho.dims(), rotation.ion, prop);
  out = 0.5 * (out + out.adjoint());
  return DensityMatrix(rho.dims(), std::move(out), Unchecked{});
}

}  // namespace ququart
