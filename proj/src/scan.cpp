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

#include "ququart/scan.hpp"

#include "ququart/errors.hpp"

namespace ququart {
namespace {

std::size_t find_series(const ScanResult& s, std::string_view name) {
  for (std::size_t i = 0; i < s.series.size(); ++i) {
    if (s.series[i] == name) return i;
  }
  throw ArgumentError("scan has no series named '" + std::string(name) + "'");
}

}  // namespace

const std::vector<double>& ScanResult::column(std::string_view name) const {
  return values[find_series(*this, name)];
}

const std::vector<double>& ScanResult::column_errors(std::string_view name) const {
  return errors[find_series(*this, name)];
}

void ScanResult::add_series(std::string name, std::vector<double> v, std::vector<double> err) {
  if (v.size() != grid.size() || err.size() != grid.size()) {
    throw DimensionError("series '" + name + "' length does not match the grid");
  }
  series.push_back(std::move(name));
  values.push_back(std::move(v));
  errors.push_back(std::move(err));
}

void ScanResult::validate() const {
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) throw ValidationError("scan grid is not strictly increasing");
  }
  if (values.size() != series.size() || errors.size() != series.size()) {
    throw DimensionError("scan series bookkeeping is inconsistent");
  }
  for (std::size_t s = 0; s < series.size(); ++s) {
    if (values[s].size() != grid.size() || errors[s].size() != grid.size()) {
      throw DimensionError("series '" + series[s] + "' length does not match the grid");
    }
  }
}

std::vector<double> linspace(double start, double stop, int points) {
  if (points < 1) throw ArgumentError("grid needs at least one point");
  if (points == 1) return {start};
  std::vector<double> g(static_cast<std::size_t>(points));
  const double step = (stop - start) / (points - 1);
  for (int i = 0; i < points; ++i) g[static_cast<std::size_t>(i)] = start + step * i;
  g.back() = stop;
  return g;
}

}  // namespace ququart
