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
#include <string>
#include <string_view>
#include <vector>

namespace ququart {

/// Estimated quantities over a swept parameter. `values[s][i]` is series `s`
/// at grid point `i`; `errors` has the same shape (zero in exact mode).
struct ScanResult {
  std::string parameter;
  std::vector<double> grid;
  std::vector<std::string> series;
  std::vector<std::vector<double>> values;
  std::vector<std::vector<double>> errors;
  int shots = 0;  // per grid point; 0 means exact expectation values
  std::uint64_t seed = 0;

  /// Values of the named series. Throws ArgumentError if absent.
  const std::vector<double>& column(std::string_view name) const;
  const std::vector<double>& column_errors(std::string_view name) const;

  /// Appends a series, checking its length against the grid.
  void add_series(std::string name, std::vector<double> v, std::vector<double> err);

  /// Grid strictly increasing, every series as long as the grid.
  void validate() const;
};

/// `points` evenly spaced values from start to stop inclusive.
std::vector<double> linspace(double start, double stop, int points);

}  // namespace ququart
