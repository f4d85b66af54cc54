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

#include <numbers>
#include <span>
#include <vector>

#include "ququart/qudit.hpp"

namespace ququart {

/// Resonant two-level pulse on one ion. Native pulses couple level 0 to
/// level `upper`; composite sequences may describe other pairs.
///
/// On span{|lower>, |upper>} the matrix is
///   [ cos(theta/2)               -i e^{-i phi} sin(theta/2) ]
///   [ -i e^{i phi} sin(theta/2)   cos(theta/2)              ]
/// and identity on every other level.
struct Rotation {
  int ion = 0;
  int lower = 0;
  int upper = 1;
  double phi = 0.0;
  double theta = 0.0;

  bool is_native() const { return lower == 0 && upper > 0; }
  bool operator==(const Rotation&) const = default;
};

/// XX_{01,01}(chi) = exp(-i chi X01 (x) X01) on the (0,1) levels of two ions.
struct MsGate {
  int ion_a = 0;
  int ion_b = 1;
  double chi = std::numbers::pi / 4;

  bool operator==(const MsGate&) const = default;
};

/// Native R_{0k}(phi, theta) on a d-level qudit. Requires 1 <= k < d.
Matrix rotation_matrix(int k, double phi, double theta, int d);

/// Matrix of an arbitrary two-level Rotation (lower/upper may be any pair).
Matrix rotation_matrix(const Rotation& r, int d);

/// Time-ordered product of single-ion pulses (first pulse applied first).
/// The `ion` field is ignored.
Matrix sequence_unitary(std::span<const Rotation> pulses, int d);

/// Native pulse sequence realising R_{ik}(phi, theta): the Rotation-form
/// matrix on span{|i>, |k>} with |i> in the role of |0>, identity elsewhere
/// (exactly, no residual phase). Emitted as
///   R_{0i}(pi, pi), R_{0k}(phi - pi/2, theta), R_{0i}(0, pi)
/// i.e. conjugation of R_{0k} by the |0> <-> |i> pi pulse. Requires 1 <= i,k < d, i != k.
std::vector<Rotation> composite_rotation(int i, int k, double phi, double theta, int d, int ion = 0);

/// exp(-i chi X01 (x) X01) for ions of dimensions d_a, d_b (ion a most significant).
Matrix ms_matrix(double chi, int d_a = kDefaultQuditDim, int d_b = kDefaultQuditDim);

/// Native decomposition of a single-qudit unitary.
struct Decomposition {
  std::vector<Rotation> pulses;  // time ordered, all native
  double global_phase = 0.0;     // u == e^{i global_phase} * sequence_unitary(pulses)
};

/// Two-level (Givens) elimination through level 0: every column is cleared
/// with R_{0k} pulses, the remaining diagonal is realised with pairs of pi
/// pulses whose phase difference sets the relative phase. At most
/// d(d-1)/2 + 2(d-1) pulses. Identity maps to an empty sequence.
Decomposition decompose_single_qudit(const Matrix& u, int ion = 0);

}  // namespace ququart
