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

#include "ququart/readout.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

#include "ququart/errors.hpp"
#include "ququart/rng.hpp"

namespace ququart {
namespace {

std::vector<double> ion_marginal(const DensityMatrix& rho, int ion) {
  if (ion < 0 || ion >= rho.num_qudits()) throw ArgumentError("readout ion out of range");
  const int keep[] = {ion};
  auto p = populations(partial_trace(rho, keep));
  for (double& x : p) x = std::clamp(x, 0.0, 1.0);
  return p;
}

int sample_level(SplitMix64& rng, std::span<const double> p) {
  double u = rng.uniform();
  const double total = std::accumulate(p.begin(), p.end(), 0.0);
  u *= total;
  for (std::size_t l = 0; l < p.size(); ++l) {
    if (u < p[l]) return static_cast<int>(l);
    u -= p[l];
  }
  // Round-off: fall back to the last level with weight.
  for (std::size_t l = p.size(); l-- > 0;) {
    if (p[l] > 0.0) return static_cast<int>(l);
  }
  return 0;
}

bool detect(SplitMix64& rng, bool bright, const SpamModel& spam) {
  if (bright) return !rng.bernoulli(spam.bright_as_dark);
  return rng.bernoulli(spam.dark_as_bright);
}

// Probability the detector reports bright given the true brightness.
double p_bright(bool bright, const SpamModel& spam) {
  return bright ? 1.0 - spam.bright_as_dark : spam.dark_as_bright;
}

}  // namespace

int ShotRecord::count() const {
  return static_cast<int>(std::count(outcomes.begin(), outcomes.end(), std::uint8_t{1}));
}

double ShotRecord::fraction() const { return shots > 0 ? static_cast<double>(count()) / shots : 0.0; }

double ShotRecord::wall_time() const { return shots * kProjectionPeriod * (target_level == 0 ? 1.0 : 2.0); }

std::string ShotRecord::to_json() const {
  nlohmann::json j;
  j["experiment_id"] = experiment_id;
  j["ion"] = ion;
  j["target_level"] = target_level;
  j["shots"] = shots;
  j["seed"] = seed;
  j["counted"] = count();
  j["outcomes"] = outcomes;
  return j.dump();
}

std::string ShotRecord::to_csv() const {
  std::ostringstream out;
  out << "shot,outcome\n";
  for (std::size_t s = 0; s < outcomes.size(); ++s) out << s << ',' << int{outcomes[s]} << '\n';
  return out.str();
}

ShotRecord shelving_readout(const DensityMatrix& rho, int ion, int level, int shots, std::uint64_t seed,
                            const SpamModel& spam, std::string experiment_id) {
  spam.validate();
  if (shots < 1) throw ArgumentError("shots must be >= 1");
  const auto p = ion_marginal(rho, ion);
  const int d = static_cast<int>(p.size());
  if (level < 0 || level >= d) throw ArgumentError("target level " + std::to_string(level) + " outside [0, d)");

  ShotRecord rec;
  rec.experiment_id = std::move(experiment_id);
  rec.ion = ion;
  rec.target_level = level;
  rec.shots = shots;
  rec.seed = seed;
  rec.outcomes.resize(static_cast<std::size_t>(shots));
  for (int s = 0; s < shots; ++s) {
    SplitMix64 rng(derive_seed(seed, static_cast<std::uint64_t>(s)));
    const int l = sample_level(rng, p);
    bool counted;
    if (level == 0) {
      counted = detect(rng, l == 0, spam);
    } else {
      const bool first_bright = detect(rng, l == 0, spam);
      // The transfer pulse swaps |0> and |k>; a failed transfer leaves the
      // ion where it was.
      const bool transferred = !rng.bernoulli(spam.transfer_error);
      const bool now_bright = transferred ? (l == level) : (l == 0);
      const bool second_bright = detect(rng, now_bright, spam);
      counted = !first_bright && second_bright;
    }
    rec.outcomes[static_cast<std::size_t>(s)] = counted ? 1 : 0;
  }
  return rec;
}

ShotRecord shelving_readout(const QuditState& state, int ion, int level, int shots, std::uint64_t seed,
                            const SpamModel& spam, std::string experiment_id) {
  return shelving_readout(DensityMatrix::from_state(state), ion, level, shots, seed, spam, std::move(experiment_id));
}

double expected_shelving_fraction(std::span<const double> p, int level, const SpamModel& spam) {
  spam.validate();
  const int d = static_cast<int>(p.size());
  if (level < 0 || level >= d) throw ArgumentError("target level outside [0, d)");
  double total = 0.0;
  for (int l = 0; l < d; ++l) {
    const double w = p[static_cast<std::size_t>(l)];
    if (w == 0.0) continue;
    if (level == 0) {
      total += w * p_bright(l == 0, spam);
      continue;
    }
    const double first_dark = 1.0 - p_bright(l == 0, spam);
    const double te = spam.transfer_error;
    const double second = (1.0 - te) * p_bright(l == level, spam) + te * p_bright(l == 0, spam);
    total += w * first_dark * second;
  }
  return total;
}

namespace {

PopulationEstimate assemble(std::span<const int> levels, std::span<const double> fractions,
                            std::span<const int> shots, int d) {
  if (d < kMinQuditDim || d > kMaxQuditDim) throw DimensionError("qudit dimension outside [2, 6]");
  if (static_cast<int>(levels.size()) != d - 1) {
    throw ArgumentError("need records for exactly d - 1 = " + std::to_string(d - 1) + " distinct levels");
  }
  std::set<int> seen;
  for (int l : levels) {
    if (l < 0 || l >= d) throw ArgumentError("record level outside [0, d)");
    if (!seen.insert(l).second) throw ArgumentError("duplicate record for level " + std::to_string(l));
  }
  int missing = 0;
  while (seen.count(missing)) ++missing;

  PopulationEstimate est;
  est.p.assign(static_cast<std::size_t>(d), 0.0);
  est.sigma.assign(static_cast<std::size_t>(d), 0.0);
  est.inferred_level = missing;
  double var_sum = 0.0;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const double f = fractions[i];
    const auto l = static_cast<std::size_t>(levels[i]);
    est.p[l] = f;
    if (shots[i] > 0) {
      const double var = f * (1.0 - f) / shots[i];
      est.sigma[l] = std::sqrt(var);
      var_sum += var;
    }
  }
  double others = 0.0;
  for (int l = 0; l < d; ++l) {
    if (l != missing) others += est.p[static_cast<std::size_t>(l)];
  }
  double& complement = est.p[static_cast<std::size_t>(missing)];
  complement = 1.0 - others;
  // Absorb the rounding of the level-ordered sum into the inferred level so
  // that summing p in level order gives exactly 1.
  for (int iter = 0; iter < 64; ++iter) {
    double total = 0.0;
    for (double v : est.p) total += v;
    if (total == 1.0) break;
    complement = std::nextafter(complement, total < 1.0 ? 2.0 : -1.0);
  }
  est.sigma[static_cast<std::size_t>(missing)] = std::sqrt(var_sum);
  return est;
}

}  // namespace

PopulationEstimate estimate_populations(std::span<const ShotRecord> records, int d) {
  std::vector<int> levels, shots;
  std::vector<double> fractions;
  for (const auto& r : records) {
    if (r.shots < 1 || static_cast<int>(r.outcomes.size()) != r.shots) {
      throw ValidationError("shot record outcome count does not match its shot count");
    }
    levels.push_back(r.target_level);
    fractions.push_back(r.fraction());
    shots.push_back(r.shots);
  }
  return assemble(levels, fractions, shots, d);
}

PopulationEstimate estimate_populations(std::span<const int> levels, std::span<const double> fractions, int d,
                                        int shots) {
  if (levels.size() != fractions.size()) throw ArgumentError("levels and fractions differ in length");
  std::vector<int> n(levels.size(), shots);
  return assemble(levels, fractions, n, d);
}

double CameraCounts::fraction(int outcome) const {
  return shots > 0 ? static_cast<double>(counts.at(static_cast<std::size_t>(outcome))) / shots : 0.0;
}

CameraCounts camera_readout(const DensityMatrix& rho, int shots, std::uint64_t seed, const SpamModel& spam) {
  spam.validate();
  if (rho.num_qudits() != 2) throw DimensionError("camera readout expects two ions");
  if (shots < 1) throw ArgumentError("shots must be >= 1");
  auto p = populations(rho);
  for (double& x : p) x = std::max(x, 0.0);
  const int db = rho.dims()[1];
  CameraCounts out;
  out.shots = shots;
  out.seed = seed;
  for (int s = 0; s < shots; ++s) {
    SplitMix64 rng(derive_seed(seed, static_cast<std::uint64_t>(s)));
    const int idx = sample_level(rng, p);
    const bool a = detect(rng, idx / db == 0, spam);
    const bool b = detect(rng, idx % db == 0, spam);
    ++out.counts[static_cast<std::size_t>(2 * (a ? 0 : 1) + (b ? 0 : 1))];
  }
  return out;
}

std::array<double, 4> camera_distribution(const DensityMatrix& rho, const SpamModel& spam) {
  spam.validate();
  if (rho.num_qudits() != 2) throw DimensionError("camera readout expects two ions");
  const auto p = populations(rho);
  const int db = rho.dims()[1];
  std::array<double, 4> out{};
  for (std::size_t idx = 0; idx < p.size(); ++idx) {
    const double w = std::max(p[idx], 0.0);
    const double ba = p_bright(static_cast<int>(idx) / db == 0, spam);
    const double bb = p_bright(static_cast<int>(idx) % db == 0, spam);
    out[0] += w * ba * bb;
    out[1] += w * ba * (1.0 - bb);
    out[2] += w * (1.0 - ba) * bb;
    out[3] += w * (1.0 - ba) * (1.0 - bb);
  }
  return out;
}

}  // namespace ququart
