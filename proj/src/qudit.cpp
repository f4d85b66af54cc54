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

#include "ququart/qudit.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ququart/errors.hpp"

namespace ququart {
namespace {

std::vector<std::size_t> strides_of(const Dims& dims) {
  std::vector<std::size_t> strides(dims.size());
  std::size_t s = 1;
  for (std::size_t i = dims.size(); i-- > 0;) {
    strides[i] = s;
    s *= static_cast<std::size_t>(dims[i]);
  }
  return strides;
}

void check_targets(const Dims& dims, std::span<const int> targets) {
  if (targets.empty()) throw ArgumentError("target list is empty");
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (targets[i] < 0 || targets[i] >= static_cast<int>(dims.size())) {
      throw DimensionError("target qudit " + std::to_string(targets[i]) + " out of range");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (targets[i] == targets[j]) {
        throw ArgumentError("duplicate target qudit " + std::to_string(targets[i]));
      }
    }
  }
}

// Offsets of every sub-index over `targets` (targets[0] most significant) and
// the flat indices whose target digits are all zero.
struct Layout {
  std::vector<std::size_t> sub_offsets;
  std::vector<std::size_t> bases;
};

Layout layout_for(const Dims& dims, std::span<const int> targets) {
  const auto strides = strides_of(dims);
  const std::size_t total = register_size(dims);
  Layout out;
  std::size_t sub = 1;
  for (int t : targets) sub *= static_cast<std::size_t>(dims[t]);
  out.sub_offsets.resize(sub);
  for (std::size_t s = 0; s < sub; ++s) {
    std::size_t rem = s;
    std::size_t off = 0;
    for (std::size_t i = targets.size(); i-- > 0;) {
      const auto d = static_cast<std::size_t>(dims[targets[i]]);
      off += (rem % d) * strides[targets[i]];
      rem /= d;
    }
    out.sub_offsets[s] = off;
  }
  out.bases.reserve(total / sub);
  for (std::size_t idx = 0; idx < total; ++idx) {
    bool zero = true;
    for (int t : targets) {
      if ((idx / strides[t]) % static_cast<std::size_t>(dims[t]) != 0) {
        zero = false;
        break;
      }
    }
    if (zero) out.bases.push_back(idx);
  }
  return out;
}

void check_operator(const Dims& dims, const Matrix& u, std::span<const int> targets) {
  check_targets(dims, targets);
  std::size_t sub = 1;
  for (int t : targets) sub *= static_cast<std::size_t>(dims[t]);
  if (u.rows() != u.cols() || static_cast<std::size_t>(u.rows()) != sub) {
    throw DimensionError("operator is " + std::to_string(u.rows()) + "x" + std::to_string(u.cols()) +
                         ", targets span dimension " + std::to_string(sub));
  }
  if (!is_unitary(u)) throw ValidationError("operator is not unitary within 1e-10");
}

// Left-multiplies every column of `m` by u acting on `targets`.
void apply_columns(Matrix& m, const Matrix& u, const Layout& lay) {
  const auto sub = static_cast<Eigen::Index>(lay.sub_offsets.size());
  Vector gathered(sub);
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    for (std::size_t base : lay.bases) {
      for (Eigen::Index s = 0; s < sub; ++s) {
        gathered(s) = m(static_cast<Eigen::Index>(base + lay.sub_offsets[s]), c);
      }
      const Vector out = u * gathered;
      for (Eigen::Index s = 0; s < sub; ++s) {
        m(static_cast<Eigen::Index>(base + lay.sub_offsets[s]), c) = out(s);
      }
    }
  }
}

}  // namespace

std::size_t register_size(const Dims& dims) {
  if (dims.empty()) throw DimensionError("register has no qudits");
  std::size_t n = 1;
  for (int d : dims) {
    if (d < kMinQuditDim || d > kMaxQuditDim) {
      throw DimensionError("qudit dimension " + std::to_string(d) + " outside [2, 6]");
    }
    n *= static_cast<std::size_t>(d);
  }
  return n;
}

std::size_t flat_index(const Dims& dims, std::span<const int> levels) {
  register_size(dims);
  if (levels.size() != dims.size()) {
    throw DimensionError("expected " + std::to_string(dims.size()) + " levels, got " +
                         std::to_string(levels.size()));
  }
  std::size_t idx = 0;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (levels[i] < 0 || levels[i] >= dims[i]) {
      throw DimensionError("level " + std::to_string(levels[i]) + " out of range for qudit " +
                           std::to_string(i) + " of dimension " + std::to_string(dims[i]));
    }
    idx = idx * static_cast<std::size_t>(dims[i]) + static_cast<std::size_t>(levels[i]);
  }
  return idx;
}

std::vector<int> unflatten(const Dims& dims, std::size_t index) {
  if (index >= register_size(dims)) throw DimensionError("flat index out of range");
  std::vector<int> levels(dims.size());
  for (std::size_t i = dims.size(); i-- > 0;) {
    levels[i] = static_cast<int>(index % static_cast<std::size_t>(dims[i]));
    index /= static_cast<std::size_t>(dims[i]);
  }
  return levels;
}

bool is_unitary(const Matrix& u, double tol) {
  if (u.rows() != u.cols()) return false;
  const Matrix err = u.adjoint() * u - Matrix::Identity(u.rows(), u.cols());
  return err.cwiseAbs().maxCoeff() <= tol;
}

QuditState::QuditState(Dims dims, Vector amplitudes) : dims_(std::move(dims)), amps_(std::move(amplitudes)) {
  if (static_cast<std::size_t>(amps_.size()) != register_size(dims_)) {
    throw DimensionError("amplitude vector has length " + std::to_string(amps_.size()) +
                         ", register needs " + std::to_string(register_size(dims_)));
  }
  if (std::abs(amps_.norm() - 1.0) > kValidationTol) {
    throw ValidationError("state is not normalised (norm " + std::to_string(amps_.norm()) + ")");
  }
}

QuditState QuditState::normalized(Dims dims, Vector amplitudes) {
  const double n = amplitudes.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw ValidationError("cannot normalise a zero or non-finite vector");
  return QuditState(std::move(dims), amplitudes / n);
}

void validate_density(const Matrix& rho, double tol) {
  if (rho.rows() != rho.cols()) throw DimensionError("density matrix is not square");
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > tol) {
    throw ValidationError("density matrix is not Hermitian");
  }
  if (std::abs(rho.trace().real() - 1.0) > tol) {
    throw ValidationError("density matrix trace " + std::to_string(rho.trace().real()) + " != 1");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-9) {
    throw ValidationError("density matrix has a negative eigenvalue");
  }
}

DensityMatrix::DensityMatrix(Dims dims, Matrix elements) : dims_(std::move(dims)), rho_(std::move(elements)) {
  if (static_cast<std::size_t>(rho_.rows()) != register_size(dims_)) {
    throw DimensionError("density matrix side does not match register dimensions");
  }
  validate_density(rho_);
}

DensityMatrix DensityMatrix::from_state(const QuditState& state) {
  const Vector& a = state.amplitudes();
  return DensityMatrix(state.dims(), a * a.adjoint(), Unchecked{});
}

DensityMatrix DensityMatrix::maximally_mixed(const Dims& dims) {
  const auto n = static_cast<Eigen::Index>(register_size(dims));
  return DensityMatrix(dims, Matrix::Identity(n, n) / static_cast<double>(n), Unchecked{});
}

double DensityMatrix::purity() const { return (rho_ * rho_).trace().real(); }

QuditState basis_state(const Dims& dims, std::span<const int> levels) {
  const std::size_t idx = flat_index(dims, levels);
  Vector amps = Vector::Zero(static_cast<Eigen::Index>(register_size(dims)));
  amps(static_cast<Eigen::Index>(idx)) = 1.0;
  return QuditState(dims, std::move(amps), Unchecked{});
}

QuditState apply_unitary(const QuditState& state, const Matrix& u, std::span<const int> targets) {
  check_operator(state.dims(), u, targets);
  Matrix m = state.amplitudes();
  apply_columns(m, u, layout_for(state.dims(), targets));
  return QuditState(state.dims(), m.col(0), Unchecked{});
}

DensityMatrix apply_unitary(const DensityMatrix& rho, const Matrix& u, std::span<const int> targets) {
  check_operator(rho.dims(), u, targets);
  const Layout lay = layout_for(rho.dims(), targets);
  Matrix m = rho.elements();
  apply_columns(m, u, lay);  // U rho
  Matrix t = m.adjoint();
  apply_columns(t, u, lay);  // U (U rho)^dagger
  return DensityMatrix(rho.dims(), t.adjoint(), Unchecked{});
}

Matrix embed_operator(const Dims& dims, const Matrix& u, std::span<const int> targets) {
  check_targets(dims, targets);
  const auto n = static_cast<Eigen::Index>(register_size(dims));
  Matrix m = Matrix::Identity(n, n);
  apply_columns(m, u, layout_for(dims, targets));
  return m;
}

std::vector<double> populations(const QuditState& state) {
  std::vector<double> p(state.size());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::norm(state.amplitude(i));
  return p;
}

std::vector<double> populations(const DensityMatrix& rho) {
  std::vector<double> p(rho.size());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::max(0.0, rho(i, i).real());
  return p;
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep) {
  const Dims& dims = rho.dims();
  check_targets(dims, keep);
  std::vector<int> traced;
  for (int q = 0; q < static_cast<int>(dims.size()); ++q) {
    if (std::find(keep.begin(), keep.end(), q) == keep.end()) traced.push_back(q);
  }
  Dims kept_dims;
  for (int q : keep) kept_dims.push_back(dims[q]);
  const Layout kept = layout_for(dims, keep);
  // Offsets over the traced qudits: the bases of the kept layout.
  const auto nk = static_cast<Eigen::Index>(kept.sub_offsets.size());
  Matrix out = Matrix::Zero(nk, nk);
  for (Eigen::Index i = 0; i < nk; ++i) {
    for (Eigen::Index j = 0; j < nk; ++j) {
      Complex acc = 0.0;
      for (std::size_t base : kept.bases) {
        acc += rho(base + kept.sub_offsets[i], base + kept.sub_offsets[j]);
      }
      out(i, j) = acc;
    }
  }
  return DensityMatrix(kept_dims, std::move(out), Unchecked{});
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  Dims dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  const Matrix& x = a.elements();
  const Matrix& y = b.elements();
  Matrix out(x.rows() * y.rows(), x.cols() * y.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
    }
  }
  return DensityMatrix(std::move(dims), std::move(out), Unchecked{});
}

namespace {

Matrix psd_sqrt(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()));
  Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

double fidelity(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dims() != b.dims()) throw DimensionError("fidelity of states with different dimensions");
  const Matrix sa = psd_sqrt(a.elements());
  const Matrix inner = sa * b.elements() * sa;
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (inner + inner.adjoint()), Eigen::EigenvaluesOnly);
  const double tr = es.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
  return tr * tr;
}

double fidelity(const DensityMatrix& rho, const QuditState& psi) {
  if (rho.dims() != psi.dims()) throw DimensionError("fidelity of states with different dimensions");
  const Vector& v = psi.amplitudes();
  return (v.adjoint() * rho.elements() * v)(0, 0).real();
}

double fidelity(const QuditState& a, const QuditState& b) {
  if (a.dims() != b.dims()) throw DimensionError("fidelity of states with different dimensions");
  return std::norm(a.amplitudes().dot(b.amplitudes()));
}

}  // namespace ququart
