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

#include <string>
#include <string_view>

#include "ququart/transpiler.hpp"

namespace ququart {

// Qubit circuit text format, one statement per line, '#' starts a comment:
//
//   qubits 4            (optional, default 4; must precede gates)
//   rx 0 pi/2           rx | ry | rz <qubit> <angle>
//   cnot 0 2            cnot | cx | cz <control> <target>
//
// Angles are products and quotients of numbers and `pi` with an optional
// leading sign, e.g. -3*pi/4 or 0.25.
//
// Native circuit text format:
//
//   ions 2
//   dims 4
//   r <ion> <lower> <upper> <phi> <theta>
//   ms <ion_a> <ion_b> <chi>
//
// Header comments carry the tool version, input hash and the encoding.

/// Throws ArgumentError on a malformed angle.
double parse_angle(std::string_view text);
/// Throws ParseError with the 1-based line number.
QubitCircuit parse_qubit_circuit(std::string_view text);
std::string format_qubit_circuit(const QubitCircuit& circuit);

QuditCircuit parse_native_circuit(std::string_view text);
/// Deterministic: angles are written with 17 significant digits.
std::string format_native_circuit(const QuditCircuit& circuit, std::string_view source_hash = {});

/// 64-bit FNV-1a of the bytes, as 16 hex digits.
std::string content_hash(std::string_view bytes);

/// JSON verification report of a transpilation.
std::string transpile_report(const TranspileResult& result, std::string_view source_hash, double tolerance);

}  // namespace ququart
