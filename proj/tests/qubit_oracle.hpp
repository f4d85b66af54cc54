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

#include <cmath>
#include <numbers>
#include <random>

#include "ququart/transpiler.hpp"

namespace qqtest {

using ququart::Complex;
using ququart::Matrix;
using ququart::QubitCircuit;
using ququart::QubitGate;
using ququart::QubitGateKind;
using ququart::Vector;

// Applies one qubit gate to a 4-qubit amplitude vector by bit manipulation,
// qubit 0 being the most significant bit.
inline Vector apply_gate_bits(const QubitGate& g, const Vector& in) {
  auto bit = [](int index, int q) { return (index >> (3 - q)) & 1; };
  Vector out = Vector::Zero(16);
  const double c = std::cos(g.angle / 2), s = std::sin(g.angle / 2);
  for (int i = 0; i < 16; ++i) {
    const Complex a = in(i);
    if (a == Complex(0.0)) continue;
    const int t = g.qubits[g.is_two_qubit() ? 1 : 0];
    const int flip = i ^ (1 << (3 - t));
    const int b = bit(i, t);
    switch (g.kind) {
      case QubitGateKind::RX:
        out(i) += c * a;
        out(flip) += -Complex(0.0, 1.0) * s * a;
        break;
      case QubitGateKind::RY:
        out(i) += c * a;
        out(flip) += (b == 0 ? s : -s) * a;
        break;
      case QubitGateKind::RZ: out(i) += std::polar(1.0, b == 0 ? -g.angle / 2 : g.angle / 2) * a; break;
      case QubitGateKind::CZ: out(i) += (bit(i, g.qubits[0]) && b ? -1.0 : 1.0) * a; break;
      case QubitGateKind::CNOT: out(bit(i, g.qubits[0]) ? flip : i) += a; break;
    }
  }
  return out;
}

inline Matrix oracle_unitary(const QubitCircuit& c) {
  Matrix u(16, 16);
  for (int col = 0; col < 16; ++col) {
    Vector v = Vector::Unit(16, col);
    for (const auto& g : c.gates) v = apply_gate_bits(g, v);
    u.col(col) = v;
  }
  return u;
}

inline QubitCircuit random_circuit(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> kind(0, 4), qubit(0, 3);
  std::uniform_real_distribution<double> angle(-2 * std::numbers::pi, 2 * std::numbers::pi);
  QubitCircuit c;
  for (int i = 0; i < depth; ++i) {
    QubitGate g;
    g.kind = static_cast<QubitGateKind>(kind(rng));
    g.qubits[0] = qubit(rng);
    if (g.is_two_qubit()) {
      do g.qubits[1] = qubit(rng);
      while (g.qubits[1] == g.qubits[0]);
    } else {
      g.angle = angle(rng);
    }
    c.gates.push_back(g);
  }
  return c;
}

}  // namespace qqtest
