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

#include <cmath>
#include <numbers>
#include <json.hpp>

#include "ququart/errors.hpp"
#include "ququart/gates.hpp"
#include "ququart/readout.hpp"
#include "test_util.hpp"

using namespace ququart;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<ShotRecord> read_levels(const DensityMatrix& rho, int ion, std::vector<int> levels, int shots,
                                    std::uint64_t seed, const SpamModel& spam = {}) {
  std::vector<ShotRecord> out;
  for (int l : levels) out.push_back(shelving_readout(rho, ion, l, shots, seed + static_cast<std::uint64_t>(l), spam));
  return out;
}

}  // namespace

TEST(Shelving, BasisStatesAreDeterministic) {
  for (int k = 0; k < 4; ++k) {
    const auto s = basis_state({4}, {k});
    for (int l = 0; l < 4; ++l) {
      const auto rec = shelving_readout(s, 0, l, 50, 9);
      EXPECT_EQ(rec.count(), l == k ? 50 : 0) << k << " " << l;
    }
  }
}

TEST(Shelving, EqualSuperpositionHalf) {
  Vector v = Vector::Zero(4);
  v(0) = v(2) = 1.0 / std::sqrt(2.0);
  const auto rec = shelving_readout(QuditState({4}, v), 0, 2, 100000, 17);
  EXPECT_NEAR(rec.fraction(), 0.5, 3.0 * std::sqrt(0.25 / 1e5));
  EXPECT_DOUBLE_EQ(rec.wall_time(), 100000 * 2 * kProjectionPeriod);
}

TEST(Shelving, SecondIonOfRegister) {
  const auto s = basis_state({4, 4}, {0, 3});
  EXPECT_EQ(shelving_readout(s, 1, 3, 20, 1).count(), 20);
  EXPECT_EQ(shelving_readout(s, 0, 3, 20, 1).count(), 0);
  EXPECT_THROW(shelving_readout(s, 2, 3, 20, 1), ArgumentError);
  EXPECT_THROW(shelving_readout(s, 0, 4, 20, 1), ArgumentError);
  EXPECT_THROW(shelving_readout(s, 0, 1, 0, 1), ArgumentError);
}

TEST(Shelving, DeterministicPerSeed) {
  std::mt19937_64 rng(41);
  const DensityMatrix rho({4}, qqtest::random_density(4, rng));
  const auto a = shelving_readout(rho, 0, 2, 500, 1234);
  const auto b = shelving_readout(rho, 0, 2, 500, 1234);
  const auto c = shelving_readout(rho, 0, 2, 500, 1235);
  EXPECT_EQ(a.outcomes, b.outcomes);
  EXPECT_NE(a.outcomes, c.outcomes);
  // Shot s depends only on (seed, s): a longer run extends a shorter one.
  const auto longer = shelving_readout(rho, 0, 2, 800, 1234);
  EXPECT_TRUE(std::equal(a.outcomes.begin(), a.outcomes.end(), longer.outcomes.begin()));
}

TEST(Shelving, RecordSerialisation) {
  const auto rec = shelving_readout(basis_state({4}, {1}), 0, 1, 3, 5, {}, "demo");
  const auto j = nlohmann::json::parse(rec.to_json());
  EXPECT_EQ(j.at("experiment_id"), "demo");
  EXPECT_EQ(j.at("shots"), 3);
  EXPECT_EQ(j.at("target_level"), 1);
  EXPECT_EQ(rec.to_csv(), "shot,outcome\n0,1\n1,1\n2,1\n");
}

TEST(Estimate, UnbiasedWithinThreeSigma) {
  std::mt19937_64 rng(42);
  const int shots = 100000;
  for (int trial = 0; trial < 10; ++trial) {
    const QuditState psi({4}, qqtest::random_state(4, rng));
    const auto truth = populations(psi);
    const auto rho = DensityMatrix::from_state(psi);
    const auto est = estimate_populations(read_levels(rho, 0, {1, 2, 3}, shots, 100 * trial), 4);
    EXPECT_EQ(est.inferred_level, 0);
    for (int l = 0; l < 4; ++l) {
      const double bound = 3.0 * est.sigma[l] + 1e-12;
      EXPECT_LE(std::abs(est.p[l] - truth[l]), bound) << trial << " level " << l;
    }
  }
}

TEST(Estimate, ComplementSumsToOneExactly) {
  std::mt19937_64 rng(43);
  const std::vector<std::vector<int>> subsets{{1, 2, 3}, {0, 2, 3}, {0, 1, 3}, {0, 1, 2}};
  for (int trial = 0; trial < 40; ++trial) {
    const DensityMatrix rho({4}, qqtest::random_density(4, rng));
    for (const auto& levels : subsets) {
      const auto est = estimate_populations(read_levels(rho, 0, levels, 777 + trial, 5 + trial), 4);
      double sum = 0.0;
      for (double p : est.p) sum += p;
      EXPECT_EQ(sum, 1.0);
      int missing = 0 + 1 + 2 + 3;
      for (int l : levels) missing -= l;
      EXPECT_EQ(est.inferred_level, missing);
      double var = 0.0;
      for (int l : levels) var += est.sigma[l] * est.sigma[l];
      EXPECT_NEAR(est.sigma[missing], std::sqrt(var), 1e-15);
    }
  }
  const std::vector<int> lv{1, 2, 3};
  const std::vector<double> fr{0.1, 0.2, 0.3};
  const auto exact = estimate_populations(lv, fr, 4);
  EXPECT_NEAR(exact.p[0], 0.4, 1e-15);
  EXPECT_EQ(exact.sigma[1], 0.0);
}

TEST(Estimate, MissingOrDuplicateLevelsRejected) {
  const auto rho = DensityMatrix::maximally_mixed({4});
  EXPECT_THROW(estimate_populations(read_levels(rho, 0, {1, 2}, 10, 1), 4), ArgumentError);
  EXPECT_THROW(estimate_populations(read_levels(rho, 0, {1, 1, 2}, 10, 1), 4), ArgumentError);
  EXPECT_THROW(estimate_populations(read_levels(rho, 0, {1, 2, 3}, 10, 1), 7), DimensionError);
}

TEST(Spam, ExpectedFractionMatchesMonteCarlo) {
  SpamModel spam{0.02, 0.03, 0.05};
  std::mt19937_64 rng(44);
  const DensityMatrix rho({4}, qqtest::random_density(4, rng));
  const auto pops = populations(rho);
  // Direct oracle for k >= 1: dark first, transfer, bright second.
  auto oracle = [&](int k) {
    if (k == 0) return pops[0] * (1 - spam.bright_as_dark) + (1 - pops[0]) * spam.dark_as_bright;
    double f = 0.0;
    const double t = spam.transfer_error;
    for (int l = 0; l < 4; ++l) {
      const double dark1 = l == 0 ? spam.bright_as_dark : 1 - spam.dark_as_bright;
      // After the transfer: k -> 0 and 0 -> k on success, unchanged on failure.
      const int moved = l == k ? 0 : (l == 0 ? k : l);
      auto bright = [&](int lvl) { return lvl == 0 ? 1 - spam.bright_as_dark : spam.dark_as_bright; };
      f += pops[l] * dark1 * ((1 - t) * bright(moved) + t * bright(l));
    }
    return f;
  };
  for (int k = 0; k < 4; ++k) {
    const double expect = expected_shelving_fraction(pops, k, spam);
    EXPECT_NEAR(expect, oracle(k), 1e-14);
    const auto rec = shelving_readout(rho, 0, k, 100000, 77, spam);
    EXPECT_NEAR(rec.fraction(), expect, 4.0 * std::sqrt(expect * (1 - expect) / 1e5));
  }
}

TEST(Camera, BellDistributionAndSampling) {
  const auto bell = DensityMatrix::from_state(
      apply_unitary(basis_state({4, 4}, {0, 0}), ms_matrix(kPi / 4), {0, 1}));
  const auto dist = camera_distribution(bell);
  EXPECT_NEAR(dist[0], 0.5, 1e-12);
  EXPECT_NEAR(dist[3], 0.5, 1e-12);
  EXPECT_NEAR(dist[1] + dist[2], 0.0, 1e-12);
  const auto counts = camera_readout(bell, 10000, 3);
  EXPECT_EQ(counts.counts[0] + counts.counts[3], 10000);
  EXPECT_NEAR(counts.fraction(0), 0.5, 0.02);
  // Levels 2, 3 are dark like level 1.
  const auto d = camera_distribution(DensityMatrix::from_state(basis_state({4, 4}, {0, 2})));
  EXPECT_NEAR(d[1], 1.0, 1e-15);
  EXPECT_THROW(camera_readout(DensityMatrix::maximally_mixed({4}), 10, 1), DimensionError);
}
