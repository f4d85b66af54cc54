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

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ququart/noise.hpp"
#include "ququart/qudit.hpp"

namespace ququart {

/// Length of one projection-and-detection period, s. Only used for
/// wall-time metadata.
inline constexpr double kProjectionPeriod = 5e-3;

/// Outcomes of repeated shelving measurements of one level on one ion.
/// outcomes[s] == 1 means shot s was counted as population in `target_level`.
struct ShotRecord {
  std::string experiment_id;
  int ion = 0;
  int target_level = 0;
  int shots = 0;
  std::uint64_t seed = 0;
  std::vector<std::uint8_t> outcomes;

  int count() const;
  double fraction() const;
  /// Two detection periods per shot for k >= 1, one for k = 0.
  double wall_time() const;
  std::string to_json() const;
  /// "shot,outcome" rows.
  std::string to_csv() const;
};

/// Electron-shelving measurement of level k on `ion`, repeated `shots` times.
/// For k = 0 a single fluorescence detection separates |0> (bright) from the
/// D manifold (dark). For k >= 1 a first detection is followed by the
/// R_0k(0, pi) transfer and a second detection; a shot counts when the first
/// detection is dark and the second bright. Every shot draws from its own
/// stream derived from (seed, shot), so the record does not depend on
/// evaluation order. With an ideal SPAM model the bright fraction is an
/// unbiased estimate of P(|k>).
ShotRecord shelving_readout(const DensityMatrix& rho, int ion, int level, int shots, std::uint64_t seed,
                            const SpamModel& spam = {}, std::string experiment_id = "shelving");
ShotRecord shelving_readout(const QuditState& state, int ion, int level, int shots, std::uint64_t seed,
                            const SpamModel& spam = {}, std::string experiment_id = "shelving");

/// Probability that one shot of the protocol above counts, given the ion's
/// level populations.
double expected_shelving_fraction(std::span<const double> level_populations, int level, const SpamModel& spam);

struct PopulationEstimate {
  std::vector<double> p;
  std::vector<double> sigma;
  int inferred_level = -1;
};

/// Populations from records of d - 1 distinct levels of one ion. The missing
/// level is 1 - sum of the others, adjusted by at most a few ulps so that
/// summing p in level order gives exactly 1.
/// Standard errors are binomial, the inferred level's combines the others in
/// quadrature.
PopulationEstimate estimate_populations(std::span<const ShotRecord> records, int qudit_dim);
/// Same from exact fractions (infinite-shot limit; errors are zero when
/// shots == 0).
PopulationEstimate estimate_populations(std::span<const int> levels, std::span<const double> fractions,
                                        int qudit_dim, int shots = 0);

/// Simultaneous per-ion bright/dark detection of two ions. Index b = 2 x_A + x_B
/// with x = 0 for bright (|0>) and 1 for dark, i.e. the order 00, 01, 10, 11
/// of the qubit subspace.
struct CameraCounts {
  std::array<int, 4> counts{};
  int shots = 0;
  std::uint64_t seed = 0;

  double fraction(int outcome) const;
};

CameraCounts camera_readout(const DensityMatrix& rho, int shots, std::uint64_t seed, const SpamModel& spam = {});
/// Exact outcome distribution of camera_readout.
std::array<double, 4> camera_distribution(const DensityMatrix& rho, const SpamModel& spam = {});

}  // namespace ququart
