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

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace ququart {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Per-qudit dimensions of a register, qudit 0 first.
using Dims = std::vector<int>;

inline constexpr int kMinQuditDim = 2;
inline constexpr int kMaxQuditDim = 6;
inline constexpr int kDefaultQuditDim = 4;

/// Tolerance used when validating inputs (norms, traces, unitarity).
inline constexpr double kValidationTol = 1e-10;

/// Product of the dimensions. Throws DimensionError on an empty register or a
/// dimension outside [2, 6].
std::size_t register_size(const Dims& dims);

/// Row-major mixed-radix index with qudit 0 most significant.
std::size_t flat_index(const Dims& dims, std::span<const int> levels);
std::vector<int> unflatten(const Dims& dims, std::size_t index);

bool is_unitary(const Matrix& u, double tol = kValidationTol);

/// Tag for internal constructors whose invariants hold by construction.
struct Unchecked {};

/// Pure state of a register of qudits. Immutable from the caller's side:
/// every operation returns a new state.
class QuditState {
 public:
  /// Validates that the amplitudes have length prod(dims) and unit norm.
  QuditState(Dims dims, Vector amplitudes);
  QuditState(Dims dims, Vector amplitudes, Unchecked)
      : dims_(std::move(dims)), amps_(std::move(amplitudes)) {}

  /// Rescales `amplitudes` to unit norm before validating.
  static QuditState normalized(Dims dims, Vector amplitudes);

  const Dims& dims() const { return dims_; }
  const Vector& amplitudes() const { return amps_; }
  Complex amplitude(std::size_t index) const { return amps_(static_cast<Eigen::Index>(index)); }
  std::size_t size() const { return static_cast<std::size_t>(amps_.size()); }
  int num_qudits() const { return static_cast<int>(dims_.size()); }

 private:
  Dims dims_;
  Vector amps_;
};

/// Mixed state over the same mixed-radix register layout as QuditState.
class DensityMatrix {
 public:
  /// Validates Hermiticity and unit trace within 1e-10 and eigenvalues >= -1e-9.
  DensityMatrix(Dims dims, Matrix elements);
  DensityMatrix(Dims dims, Matrix elements, Unchecked)
      : dims_(std::move(dims)), rho_(std::move(elements)) {}

  static DensityMatrix from_state(const QuditState& state);
  static DensityMatrix maximally_mixed(const Dims& dims);

  const Dims& dims() const { return dims_; }
  const Matrix& elements() const { return rho_; }
  Complex operator()(std::size_t row, std::size_t col) const {
    return rho_(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
  }
  std::size_t size() const { return static_cast<std::size_t>(rho_.rows()); }
  int num_qudits() const { return static_cast<int>(dims_.size()); }

  double trace() const { return rho_.trace().real(); }
  double purity() const;

 private:
  Dims dims_;
  Matrix rho_;
};

/// Throws ValidationError unless `rho` is Hermitian, trace one and PSD.
void validate_density(const Matrix& rho, double tol = kValidationTol);

QuditState basis_state(const Dims& dims, std::span<const int> levels);
inline QuditState basis_state(const Dims& dims, std::initializer_list<int> levels) {
  return basis_state(dims, std::span<const int>(levels.begin(), levels.size()));
}

/// Applies `u` to the listed qudits (targets[0] is the most significant factor
/// of `u`), identity elsewhere. `u` must be unitary within 1e-10.
QuditState apply_unitary(const QuditState& state, const Matrix& u, std::span<const int> targets);
DensityMatrix apply_unitary(const DensityMatrix& rho, const Matrix& u, std::span<const int> targets);
inline QuditState apply_unitary(const QuditState& s, const Matrix& u, std::initializer_list<int> t) {
  return apply_unitary(s, u, std::span<const int>(t.begin(), t.size()));
}
inline DensityMatrix apply_unitary(const DensityMatrix& r, const Matrix& u, std::initializer_list<int> t) {
  return apply_unitary(r, u, std::span<const int>(t.begin(), t.size()));
}

/// Full-register operator of `u` acting on `targets`.
Matrix embed_operator(const Dims& dims, const Matrix& u, std::span<const int> targets);

std::vector<double> populations(const QuditState& state);
std::vector<double> populations(const DensityMatrix& rho);

/// Reduced state over `keep`, in the order given.
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep);
inline DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<int> keep) {
  return partial_trace(rho, std::span<const int>(keep.begin(), keep.size()));
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

/// Uhlmann fidelity (Tr sqrt(sqrt(a) b sqrt(a)))^2.
double fidelity(const DensityMatrix& a, const DensityMatrix& b);
double fidelity(const DensityMatrix& rho, const QuditState& psi);
double fidelity(const QuditState& a, const QuditState& b);

}  // namespace ququart
