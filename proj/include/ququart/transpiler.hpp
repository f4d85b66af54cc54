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
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ququart/gates.hpp"
#include "ququart/qudit.hpp"

namespace ququart {

// Encoding
// --------
// Ion i carries qubits 2i (high bit) and 2i+1 (low bit) as level 2 q_hi + q_lo.
// With ion 0 most significant this makes the flat register index of the
// qudit register equal to the big-endian index of the qubit register, qubit 0
// first.

inline constexpr int kQubitsPerIon = 2;
inline constexpr int kMaxQubits = 4;
inline constexpr int kEncodedQuditDim = 4;
/// Native-op ceilings per input gate of the constructions below.
inline constexpr int kMaxOpsIntraGate = 12;
inline constexpr int kMaxOpsInterGate = 124;

enum class QubitGateKind { RX, RY, RZ, CZ, CNOT };

/// "rx, ry, rz, cz, cnot".
std::string_view supported_qubit_gates();
/// Parses a gate name (case-insensitive, "cx" accepted for cnot). Throws
/// ArgumentError naming the supported set otherwise.
QubitGateKind parse_gate_kind(std::string_view name);
std::string_view gate_name(QubitGateKind kind);

struct QubitGate {
  QubitGateKind kind = QubitGateKind::RX;
  std::array<int, 2> qubits{0, 0};  // [target] or [control, target]
  double angle = 0.0;               // rotations only

  bool is_two_qubit() const { return kind == QubitGateKind::CZ || kind == QubitGateKind::CNOT; }
};

struct QubitCircuit {
  int num_qubits = kMaxQubits;
  std::vector<QubitGate> gates;

  /// Qubit indices in range, distinct for two-qubit gates, angles finite,
  /// 1 <= num_qubits <= 4. Throws ArgumentError.
  void validate() const;
};

/// Level of an ion encoding the qubit pair (q_hi, q_lo).
int encode_map(int q_hi, int q_lo);
/// Ion and bit position (0 = high, 1 = low) of a qubit.
std::pair<int, int> qubit_location(int qubit);
/// Human-readable statement of the encoding, embedded in output files.
std::string_view encoding_description();

using NativeOp = std::variant<Rotation, MsGate>;

struct QuditCircuit {
  int num_ions = 2;
  int qudit_dim = kEncodedQuditDim;
  std::vector<NativeOp> ops;
  std::string encoding{encoding_description()};

  int rotation_count() const;
  int ms_count() const;
};

/// Throws ValidationError unless every op is a native R_0k rotation on an ion
/// in range or XX_{01,01}(pi/4) on two distinct ions.
void validate_native(const QuditCircuit& circuit);

/// 2^n x 2^n unitary of the qubit circuit over 2 * ceil(n/2) qubits.
Matrix qubit_circuit_unitary(const QubitCircuit& circuit);
Matrix native_circuit_unitary(const QuditCircuit& circuit);
/// Register state after running the native circuit on `input`.
QuditState simulate_native(const QuditCircuit& circuit, const QuditState& input);
/// max |a - e^{i g} b| with g chosen from tr(b^dagger a).
double unitary_residual(const Matrix& a, const Matrix& b);

/// Native pulses for a gate whose qubits all sit on one ion.
std::vector<NativeOp> transpile_intra(const QubitGate& gate);
/// Native ops for CZ or CNOT across the two ions, checked against the
/// encoded 16 x 16 target within 1e-8 (VerificationError otherwise).
std::vector<NativeOp> transpile_inter(const QubitGate& gate);

struct TranspileOptions {
  double rabi_frequency = 0.0;  // rad/s; 0 leaves rotation time out of the estimate
  double ms_duration = 310e-6;  // s
  double tolerance = 1e-7;
};

struct TranspileResult {
  QuditCircuit circuit;
  double residual = 0.0;
  int input_gates = 0;
  double wall_time = 0.0;       // s; rotations counted only if Omega is known
  bool rotation_time_known = false;
};

/// Per-gate transpilation and end-to-end verification. Throws
/// VerificationError if the residual exceeds options.tolerance.
TranspileResult transpile_circuit(const QubitCircuit& circuit, const TranspileOptions& options = {});

}  // namespace ququart
