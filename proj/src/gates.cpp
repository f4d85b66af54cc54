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

#include "ququart/gates.hpp"

#include <cmath>
#include <string>

#include "ququart/errors.hpp"

namespace ququart {
namespace {

using std::numbers::pi;

constexpr Complex kI{0.0, 1.0};

// Values below this are treated as exact zeros during elimination.
constexpr double kZero = 1e-14;

double wrap_angle(double a) {
  a = std::remainder(a, 2.0 * pi);
  return std::abs(a) < kZero ? 0.0 : a;
}

void check_dim(int d) {
  if (d < kMinQuditDim || d > kMaxQuditDim) {
    throw DimensionError("qudit dimension " + std::to_string(d) + " outside [2, 6]");
  }
}

// Left-multiplies rows (lo, up) of `m` by the Rotation-form 2x2 block.
void rotate_rows(Matrix& m, int lo, int up, double phi, double theta) {
  const double c = std::cos(theta / 2);
  const double s = std::sin(theta / 2);
  const Complex a01 = -kI * std::exp(-kI * phi) * s;
  const Complex a10 = -kI * std::exp(kI * phi) * s;
  for (Eigen::Index col = 0; col < m.cols(); ++col) {
    const Complex x = m(lo, col);
    const Complex y = m(up, col);
    m(lo, col) = c * x + a01 * y;
    m(up, col) = a10 * x + c * y;
  }
}

}  // namespace

Matrix rotation_matrix(int k, double phi, double theta, int d) {
  check_dim(d);
  if (k < 1 || k >= d) {
    throw ArgumentError("R_0k needs 1 <= k < d, got k=" + std::to_string(k) + ", d=" + std::to_string(d));
  }
  return rotation_matrix(Rotation{0, 0, k, phi, theta}, d);
}

Matrix rotation_matrix(const Rotation& r, int d) {
  check_dim(d);
  if (r.lower < 0 || r.upper < 0 || r.lower >= d || r.upper >= d || r.lower == r.upper) {
    throw ArgumentError("invalid level pair (" + std::to_string(r.lower) + "," + std::to_string(r.upper) +
                        ") for d=" + std::to_string(d));
  }
  Matrix m = Matrix::Identity(d, d);
  rotate_rows(m, r.lower, r.upper, r.phi, r.theta);
  return m;
}

Matrix sequence_unitary(std::span<const Rotation> pulses, int d) {
  check_dim(d);
  Matrix m = Matrix::Identity(d, d);
  for (const Rotation& r : pulses) {
    if (r.lower < 0 || r.upper < 0 || r.lower >= d || r.upper >= d || r.lower == r.upper) {
      throw ArgumentError("pulse level pair out of range");
    }
    rotate_rows(m, r.lower, r.upper, r.phi, r.theta);
  }
  return m;
}

std::vector<Rotation> composite_rotation(int i, int k, double phi, double theta, int d, int ion) {
  check_dim(d);
  if (i == k) throw ArgumentError("composite rotation needs distinct levels, got i=k=" + std::to_string(i));
  if (i < 1 || i >= d || k < 1 || k >= d) {
    throw ArgumentError("composite rotation levels must lie in [1, d)");
  }
  return {
      Rotation{ion, 0, i, pi, pi},  // inverse of R_0i(0, pi)
      Rotation{ion, 0, k, phi - pi / 2, theta},
      Rotation{ion, 0, i, 0.0, pi},
  };
}

Matrix ms_matrix(double chi, int d_a, int d_b) {
  check_dim(d_a);
  check_dim(d_b);
  // (X01 (x) X01) has eigenvalues +-1 on the (0,1)x(0,1) block and 0 elsewhere,
  // so exp(-i chi XX) = 1 + (cos chi - 1) P(x)P - i sin chi XX.
  Matrix m = Matrix::Identity(d_a * d_b, d_a * d_b);
  const double c = std::cos(chi);
  const double s = std::sin(chi);
  auto idx = [d_b](int a, int b) { return a * d_b + b; };
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      m(idx(a, b), idx(a, b)) = c;
      m(idx(a, b), idx(1 - a, 1 - b)) = -kI * s;
    }
  }
  return m;
}

Decomposition decompose_single_qudit(const Matrix& u, int ion) {
  if (u.rows() != u.cols()) throw DimensionError("single-qudit unitary must be square");
  const int d = static_cast<int>(u.rows());
  check_dim(d);
  if (!is_unitary(u)) throw ValidationError("input is not unitary within 1e-10");

  // Find R_m ... R_1 with R_m ... R_1 U = D diagonal. Column j is cleared
  // with (0,k) pulses for unprocessed k only, so finished rows stay intact.
  Matrix w = u;
  std::vector<Rotation> elim;
  for (int j = d - 1; j >= 1; --j) {
    for (int k = 1; k < j; ++k) {
      const Complex x0 = w(0, j);
      const Complex xk = w(k, j);
      if (std::abs(xk) < kZero) continue;
      // Zero row k: c xk = i e^{i phi} s x0.
      const double theta = 2.0 * std::atan2(std::abs(xk), std::abs(x0));
      const double phi = std::abs(x0) < kZero ? 0.0 : std::arg(xk) - std::arg(x0) - pi / 2;
      rotate_rows(w, 0, k, phi, theta);
      elim.push_back(Rotation{ion, 0, k, wrap_angle(phi), theta});
    }
    const Complex x0 = w(0, j);
    const Complex xj = w(j, j);
    if (std::abs(x0) < kZero) continue;
    // Zero row 0: c x0 = i e^{-i phi} s xj.
    const double theta = 2.0 * std::atan2(std::abs(x0), std::abs(xj));
    const double phi = std::abs(xj) < kZero ? 0.0 : pi / 2 - std::arg(x0) + std::arg(xj);
    rotate_rows(w, 0, j, phi, theta);
    elim.push_back(Rotation{ion, 0, j, wrap_angle(phi), theta});
  }

  // w is now diagonal: diag(e^{i alpha_l}). A pair R_0k(p1, pi) R_0k(p2, pi)
  // (p1 first) equals -diag(e^{i(p1 - p2)}, e^{-i(p1 - p2)}) on (0,k).
  // With beta_k = pi - alpha_k - gamma and gamma = -sum(alpha)/d the product of
  // all pairs is e^{i gamma} D.
  std::vector<double> alpha(static_cast<std::size_t>(d));
  double sum = 0.0;
  for (int l = 0; l < d; ++l) {
    alpha[l] = std::arg(w(l, l));
    sum += alpha[l];
  }
  const double gamma = -sum / d;

  Decomposition out;
  for (int k = 1; k < d; ++k) {
    const double beta = wrap_angle(pi - alpha[k] - gamma);
    if (std::abs(std::remainder(beta - pi, 2.0 * pi)) < 1e-15) continue;  // pair is identity
    out.pulses.push_back(Rotation{ion, 0, k, beta, pi});
    out.pulses.push_back(Rotation{ion, 0, k, 0.0, pi});
  }
  // U = R_1^dagger ... R_m^dagger D, and R(phi, theta)^dagger = R(phi + pi, theta).
  for (auto it = elim.rbegin(); it != elim.rend(); ++it) {
    Rotation inv = *it;
    inv.phi = wrap_angle(inv.phi + pi);
    out.pulses.push_back(inv);
  }
  out.global_phase = -gamma;
  return out;
}

}  // namespace ququart
