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

#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "ququart/errors.hpp"
#include "ququart/gates.hpp"
#include "ququart/qudit.hpp"
#include "test_util.hpp"

using namespace ququart;
using qqtest::kron;
using qqtest::max_abs;

namespace {

// Enumerates the register in row-major order and returns the position of
// `levels`, independent of flat_index.
std::size_t enumerate_index(const Dims& dims, const std::vector<int>& levels) {
  std::vector<int> cur(dims.size(), 0);
  for (std::size_t pos = 0;; ++pos) {
    if (cur == levels) return pos;
    int q = static_cast<int>(dims.size()) - 1;
    while (q >= 0 && ++cur[static_cast<std::size_t>(q)] == dims[static_cast<std::size_t>(q)]) {
      cur[static_cast<std::size_t>(q)] = 0;
      --q;
    }
    if (q < 0) return SIZE_MAX;
  }
}

}  // namespace

TEST(BasisState, SingleQuartGround) {
  const auto s = basis_state({4}, {0});
  Vector expect = Vector::Zero(4);
  expect(0) = 1.0;
  EXPECT_EQ(max_abs(s.amplitudes() - expect), 0.0);
}

TEST(BasisState, MixedRadixMatchesEnumeration) {
  const auto s = basis_state({4, 6}, {3, 5});
  EXPECT_EQ(s.size(), 24u);
  EXPECT_EQ(enumerate_index({4, 6}, {3, 5}), 23u);
  EXPECT_EQ(s.amplitude(23), Complex(1.0));
  const Dims dims{3, 2, 5};
  for (std::size_t i = 0; i < register_size(dims); ++i) {
    const auto lv = unflatten(dims, i);
    EXPECT_EQ(enumerate_index(dims, lv), i);
    EXPECT_EQ(flat_index(dims, lv), i);
  }
}

TEST(BasisState, RejectsOutOfRangeLevel) {
  EXPECT_THROW(basis_state({4, 4}, {0, 4}), DimensionError);
  EXPECT_THROW(basis_state({7}, {0}), DimensionError);
  EXPECT_THROW(basis_state({1}, {0}), DimensionError);
}

TEST(QuditState, ValidatesNormAndLength) {
  EXPECT_THROW(QuditState({4}, Vector::Ones(4)), ValidationError);
  EXPECT_THROW(QuditState({4}, Vector::Ones(3) / std::sqrt(3.0)), DimensionError);
  const auto s = QuditState::normalized({2}, Vector::Ones(2));
  EXPECT_NEAR(s.amplitudes().norm(), 1.0, 1e-15);
}

TEST(ApplyUnitary, IdentityAndSwap) {
  std::mt19937_64 rng(1);
  const auto psi = QuditState({4, 4}, qqtest::random_state(16, rng));
  const auto same = apply_unitary(psi, Matrix::Identity(4, 4), {1});
  EXPECT_LT(max_abs(same.amplitudes() - psi.amplitudes()), 1e-15);

  Matrix swap01 = Matrix::Identity(4, 4);
  swap01(0, 0) = swap01(1, 1) = 0.0;
  swap01(0, 1) = swap01(1, 0) = 1.0;
  const auto one = apply_unitary(basis_state({4}, {0}), swap01, {0});
  EXPECT_EQ(one.amplitude(1), Complex(1.0));
}

TEST(ApplyUnitary, MatchesKroneckerOracle) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix u = qqtest::haar_unitary(4, rng);
    const Vector v = qqtest::random_state(16, rng);
    const QuditState psi({4, 4}, v);
    const Matrix id = Matrix::Identity(4, 4);
    EXPECT_LT(max_abs(apply_unitary(psi, u, {0}).amplitudes() - kron(u, id) * v), 1e-12);
    EXPECT_LT(max_abs(apply_unitary(psi, u, {1}).amplitudes() - kron(id, u) * v), 1e-12);
  }
}

TEST(ApplyUnitary, TwoTargetsInReversedOrder) {
  std::mt19937_64 rng(3);
  // u acts on (qudit 1, qudit 0): conjugate the Kronecker oracle by SWAP.
  const Matrix u = qqtest::haar_unitary(12, rng);
  const Vector v = qqtest::random_state(12, rng);
  const QuditState psi({3, 4}, v);
  Matrix swap = Matrix::Zero(12, 12);
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 4; ++b) swap(b * 3 + a, a * 4 + b) = 1.0;
  }
  const Vector expect = swap.transpose() * u * swap * v;
  EXPECT_LT(max_abs(apply_unitary(psi, u, {1, 0}).amplitudes() - expect), 1e-12);
}

TEST(ApplyUnitary, ErrorsAndNormPreservation) {
  const auto psi = basis_state({4, 4}, {0, 0});
  EXPECT_THROW(apply_unitary(psi, 2.0 * Matrix::Identity(4, 4), {0}), ValidationError);
  EXPECT_THROW(apply_unitary(psi, Matrix::Identity(16, 16), {0, 0}), ArgumentError);
  EXPECT_THROW(apply_unitary(psi, Matrix::Identity(4, 4), {2}), DimensionError);
  EXPECT_THROW(apply_unitary(psi, Matrix::Identity(3, 3), {0}), DimensionError);
  std::mt19937_64 rng(4);
  QuditState s = psi;
  for (int i = 0; i < 50; ++i) s = apply_unitary(s, qqtest::haar_unitary(4, rng), {i % 2});
  EXPECT_NEAR(s.amplitudes().norm(), 1.0, 1e-10);
}

TEST(ApplyUnitary, DisjointTargetsCommute) {
  std::mt19937_64 rng(5);
  const Matrix u = qqtest::haar_unitary(4, rng), v = qqtest::haar_unitary(4, rng);
  const QuditState psi({4, 4}, qqtest::random_state(16, rng));
  const auto a = apply_unitary(apply_unitary(psi, u, {0}), v, {1});
  const auto b = apply_unitary(apply_unitary(psi, v, {1}), u, {0});
  EXPECT_LT(max_abs(a.amplitudes() - b.amplitudes()), 1e-12);

  const DensityMatrix rho({4, 4}, qqtest::random_density(16, rng));
  const auto ra = apply_unitary(apply_unitary(rho, u, {0}), v, {1});
  const auto rb = apply_unitary(apply_unitary(rho, v, {1}), u, {0});
  EXPECT_LT(max_abs(ra.elements() - rb.elements()), 1e-12);
  const Matrix full = kron(u, v);
  EXPECT_LT(max_abs(ra.elements() - full * rho.elements() * full.adjoint()), 1e-12);
  EXPECT_NEAR(ra.trace(), 1.0, 1e-10);
}

TEST(Populations, Examples) {
  const auto p0 = populations(basis_state({4}, {0}));
  EXPECT_EQ(p0, (std::vector<double>{1, 0, 0, 0}));
  Vector v = Vector::Zero(4);
  v(0) = v(2) = 1.0 / std::sqrt(2.0);
  const auto p = populations(QuditState({4}, v));
  EXPECT_NEAR(p[0], 0.5, 1e-15);
  EXPECT_NEAR(p[2], 0.5, 1e-15);
  const auto bell = apply_unitary(basis_state({4, 4}, {0, 0}), ms_matrix(std::numbers::pi / 4), {0, 1});
  const auto pb = populations(bell);
  EXPECT_NEAR(pb[0], 0.5, 1e-12);
  EXPECT_NEAR(pb[5], 0.5, 1e-12);
  double sum = 0.0;
  for (double x : pb) sum += x;
  EXPECT_NEAR(sum, 1.0, 1e-10);
}

TEST(PartialTrace, ProductBellAndMixed) {
  std::mt19937_64 rng(6);
  const DensityMatrix a({4}, qqtest::random_density(4, rng));
  const DensityMatrix b({4}, qqtest::random_density(4, rng));
  const auto ab = tensor(a, b);
  EXPECT_LT(max_abs(ab.elements() - kron(a.elements(), b.elements())), 1e-15);
  EXPECT_LT(max_abs(partial_trace(ab, {0}).elements() - a.elements()), 1e-12);
  EXPECT_LT(max_abs(partial_trace(ab, {1}).elements() - b.elements()), 1e-12);

  const auto bell = DensityMatrix::from_state(
      apply_unitary(basis_state({4, 4}, {0, 0}), ms_matrix(std::numbers::pi / 4), {0, 1}));
  Matrix expect = Matrix::Zero(4, 4);
  expect(0, 0) = expect(1, 1) = 0.5;
  EXPECT_LT(max_abs(partial_trace(bell, {1}).elements() - expect), 1e-12);

  const auto mixed = DensityMatrix::maximally_mixed({2, 2});
  EXPECT_LT(max_abs(partial_trace(mixed, {0}).elements() - 0.5 * Matrix::Identity(2, 2)), 1e-15);
  EXPECT_THROW(partial_trace(mixed, std::span<const int>{}), ArgumentError);
}

TEST(PartialTrace, ReorderedKeepTransposesFactors) {
  std::mt19937_64 rng(7);
  const DensityMatrix a({3}, qqtest::random_density(3, rng));
  const DensityMatrix b({2}, qqtest::random_density(2, rng));
  const DensityMatrix c({4}, qqtest::random_density(4, rng));
  const auto abc = tensor(tensor(a, b), c);
  const auto ca = partial_trace(abc, {2, 0});
  EXPECT_EQ(ca.dims(), (Dims{4, 3}));
  EXPECT_LT(max_abs(ca.elements() - kron(c.elements(), a.elements())), 1e-12);
}

TEST(DensityMatrix, Validation) {
  Matrix m = Matrix::Identity(4, 4) / 4.0;
  EXPECT_NO_THROW(DensityMatrix({4}, m));
  Matrix bad = m;
  bad(0, 1) = 0.1;
  EXPECT_THROW(DensityMatrix({4}, bad), ValidationError);
  EXPECT_THROW(DensityMatrix({4}, 2.0 * m), ValidationError);
  Matrix neg = Matrix::Zero(2, 2);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  EXPECT_THROW(DensityMatrix({2}, neg), ValidationError);
  EXPECT_THROW(DensityMatrix({2}, m), DimensionError);
}

TEST(Fidelity, PureAndMixed) {
  std::mt19937_64 rng(8);
  const QuditState psi({4}, qqtest::random_state(4, rng));
  const QuditState phi({4}, qqtest::random_state(4, rng));
  const double overlap = std::norm(psi.amplitudes().dot(phi.amplitudes()));
  EXPECT_NEAR(fidelity(psi, phi), overlap, 1e-12);
  EXPECT_NEAR(fidelity(DensityMatrix::from_state(psi), phi), overlap, 1e-12);
  EXPECT_NEAR(fidelity(DensityMatrix::from_state(psi), DensityMatrix::from_state(phi)), overlap, 1e-7);
  EXPECT_NEAR(fidelity(DensityMatrix::maximally_mixed({4}), psi), 0.25, 1e-12);
}
