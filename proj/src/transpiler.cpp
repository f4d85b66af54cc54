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

#include "ququart/transpiler.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <string>

#include "ququart/errors.hpp"

namespace ququart {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr Complex kI{0.0, 1.0};
constexpr double kInterTolerance = 1e-8;

Matrix pauli_x() { return (Matrix(2, 2) << 0, 1, 1, 0).finished(); }
Matrix pauli_y() { return (Matrix(2, 2) << 0, -kI, kI, 0).finished(); }

Matrix single_qubit_matrix(const QubitGate& g) {
  const double c = std::cos(g.angle / 2), s = std::sin(g.angle / 2);
  const Matrix id = Matrix::Identity(2, 2);
  switch (g.kind) {
    case QubitGateKind::RX: return c * id - kI * s * pauli_x();
    case QubitGateKind::RY: return c * id - kI * s * pauli_y();
    case QubitGateKind::RZ: {
      Matrix m = Matrix::Zero(2, 2);
      m(0, 0) = std::polar(1.0, -g.angle / 2);
      m(1, 1) = std::polar(1.0, g.angle / 2);
      return m;
    }
    default: throw ArgumentError("not a single-qubit gate");
  }
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  }
  return out;
}

int ions_for(int num_qubits) { return (num_qubits + kQubitsPerIon - 1) / kQubitsPerIon; }

// Full 2^n unitary of one gate over n qubits (qubit 0 most significant),
// built directly from basis-state action.
Matrix gate_unitary(const QubitGate& g, int n) {
  const auto dim = static_cast<Eigen::Index>(1) << n;
  auto bit = [n](Eigen::Index idx, int q) { return static_cast<int>((idx >> (n - 1 - q)) & 1); };
  Matrix u = Matrix::Zero(dim, dim);
  if (!g.is_two_qubit()) {
    const Matrix m = single_qubit_matrix(g);
    const int q = g.qubits[0];
    const Eigen::Index mask = static_cast<Eigen::Index>(1) << (n - 1 - q);
    for (Eigen::Index col = 0; col < dim; ++col) {
      const int b = bit(col, q);
      for (int out = 0; out < 2; ++out) {
        const Eigen::Index row = out ? (col | mask) : (col & ~mask);
        u(row, col) += m(out, b);
      }
    }
    return u;
  }
  const int c = g.qubits[0], t = g.qubits[1];
  for (Eigen::Index col = 0; col < dim; ++col) {
    if (g.kind == QubitGateKind::CZ) {
      u(col, col) = (bit(col, c) && bit(col, t)) ? -1.0 : 1.0;
    } else {
      const Eigen::Index row = bit(col, c) ? (col ^ (static_cast<Eigen::Index>(1) << (n - 1 - t))) : col;
      u(row, col) = 1.0;
    }
  }
  return u;
}

// 4 x 4 action of a gate whose qubits all live on one ion, in level order.
Matrix ion_local_matrix(const QubitGate& g) {
  const auto [ion, pos] = qubit_location(g.qubits[0]);
  QubitGate local = g;
  local.qubits[0] = pos;
  if (g.is_two_qubit()) {
    const auto [ion_t, pos_t] = qubit_location(g.qubits[1]);
    if (ion_t != ion) throw ArgumentError("intra-ion gate spans two ions");
    local.qubits[1] = pos_t;
  }
  return gate_unitary(local, kQubitsPerIon);
}

std::vector<NativeOp> pulses_for(const Matrix& u, int ion) {
  std::vector<NativeOp> ops;
  for (const Rotation& r : decompose_single_qudit(u, ion).pulses) ops.emplace_back(r);
  return ops;
}

// Permutation of the four levels sending x -> 0 and y -> 1 (others keep
// their relative order), as a unitary P with P|x> = |0>.
Matrix level_permutation(int x, int y) {
  std::vector<int> order{x, y};
  for (int l = 0; l < kEncodedQuditDim; ++l) {
    if (l != x && l != y) order.push_back(l);
  }
  Matrix p = Matrix::Zero(kEncodedQuditDim, kEncodedQuditDim);
  for (int dst = 0; dst < kEncodedQuditDim; ++dst) p(dst, order[static_cast<std::size_t>(dst)]) = 1.0;
  return p;
}

// Hadamard on levels {0, 1}, identity on the rest.
Matrix hadamard01() {
  Matrix h = Matrix::Identity(kEncodedQuditDim, kEncodedQuditDim);
  const double r = 1.0 / std::sqrt(2.0);
  h(0, 0) = r;
  h(0, 1) = r;
  h(1, 0) = r;
  h(1, 1) = -r;
  return h;
}

// Level pairs (x, y) whose Z_p = |x><x| - |y><y| sum to Z of the qubit at
// bit position `pos` of an ion.
std::array<std::array<int, 2>, 2> z_pairs(int pos) {
  if (pos == 0) return {{{0, 2}, {1, 3}}};
  return {{{0, 1}, {2, 3}}};
}

Matrix diag_phase_z(int pos, double angle) {
  // exp(-i angle Z_pos) on one ion.
  Matrix m = Matrix::Zero(kEncodedQuditDim, kEncodedQuditDim);
  for (int l = 0; l < kEncodedQuditDim; ++l) {
    const int b = pos == 0 ? (l >> 1) & 1 : l & 1;
    m(l, l) = std::polar(1.0, b ? angle : -angle);
  }
  return m;
}

}  // namespace

std::string_view supported_qubit_gates() { return "rx, ry, rz, cz, cnot"; }

QubitGateKind parse_gate_kind(std::string_view name) {
  std::string s(name);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  if (s == "rx") return QubitGateKind::RX;
  if (s == "ry") return QubitGateKind::RY;
  if (s == "rz") return QubitGateKind::RZ;
  if (s == "cz") return QubitGateKind::CZ;
  if (s == "cnot" || s == "cx") return QubitGateKind::CNOT;
  throw ArgumentError("unsupported gate '" + std::string(name) + "'; supported: " + std::string(supported_qubit_gates()));
}

std::string_view gate_name(QubitGateKind kind) {
  switch (kind) {
    case QubitGateKind::RX: return "rx";
    case QubitGateKind::RY: return "ry";
    case QubitGateKind::RZ: return "rz";
    case QubitGateKind::CZ: return "cz";
    case QubitGateKind::CNOT: return "cnot";
  }
  return "?";
}

void QubitCircuit::validate() const {
  if (num_qubits < 1 || num_qubits > kMaxQubits) throw ArgumentError("qubit count must lie in [1, 4]");
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const auto& g = gates[i];
    const int arity = g.is_two_qubit() ? 2 : 1;
    for (int k = 0; k < arity; ++k) {
      const int q = g.qubits[static_cast<std::size_t>(k)];
      if (q < 0 || q >= num_qubits) {
        throw ArgumentError("gate " + std::to_string(i) + ": qubit " + std::to_string(q) + " out of range");
      }
    }
    if (arity == 2 && g.qubits[0] == g.qubits[1]) {
      throw ArgumentError("gate " + std::to_string(i) + ": control and target coincide");
    }
    if (!std::isfinite(g.angle)) throw ArgumentError("gate " + std::to_string(i) + ": angle is not finite");
  }
}

int encode_map(int q_hi, int q_lo) {
  if ((q_hi != 0 && q_hi != 1) || (q_lo != 0 && q_lo != 1)) throw ArgumentError("qubit values must be 0 or 1");
  return 2 * q_hi + q_lo;
}

std::pair<int, int> qubit_location(int qubit) {
  if (qubit < 0 || qubit >= kMaxQubits) throw ArgumentError("qubit index out of range");
  return {qubit / kQubitsPerIon, qubit % kQubitsPerIon};
}

std::string_view encoding_description() {
  return "ion i holds qubits 2i (high) and 2i+1 (low) as level 2*q_high+q_low";
}

int QuditCircuit::rotation_count() const {
  return static_cast<int>(std::count_if(ops.begin(), ops.end(), [](const NativeOp& op) {
    return std::holds_alternative<Rotation>(op);
  }));
}

int QuditCircuit::ms_count() const { return static_cast<int>(ops.size()) - rotation_count(); }

void validate_native(const QuditCircuit& c) {
  if (c.num_ions < 1) throw ValidationError("native circuit needs at least one ion");
  if (c.qudit_dim < kMinQuditDim || c.qudit_dim > kMaxQuditDim) throw ValidationError("qudit dimension outside [2, 6]");
  for (std::size_t i = 0; i < c.ops.size(); ++i) {
    const std::string where = "op " + std::to_string(i) + ": ";
    if (const auto* r = std::get_if<Rotation>(&c.ops[i])) {
      if (r->ion < 0 || r->ion >= c.num_ions) throw ValidationError(where + "ion out of range");
      if (!r->is_native() || r->upper >= c.qudit_dim) throw ValidationError(where + "rotation is not of the R_0k form");
      if (!std::isfinite(r->phi) || !std::isfinite(r->theta)) throw ValidationError(where + "angle is not finite");
    } else {
      const auto& m = std::get<MsGate>(c.ops[i]);
      if (m.ion_a < 0 || m.ion_a >= c.num_ions || m.ion_b < 0 || m.ion_b >= c.num_ions || m.ion_a == m.ion_b) {
        throw ValidationError(where + "MS gate needs two distinct ions in range");
      }
      if (std::abs(m.chi - kPi / 4) > 1e-12) throw ValidationError(where + "only XX(pi/4) is native");
    }
  }
}

Matrix qubit_circuit_unitary(const QubitCircuit& circuit) {
  circuit.validate();
  const int n = kQubitsPerIon * ions_for(circuit.num_qubits);
  const auto dim = static_cast<Eigen::Index>(1) << n;
  Matrix u = Matrix::Identity(dim, dim);
  for (const auto& g : circuit.gates) u = gate_unitary(g, n) * u;
  return u;
}

Matrix native_circuit_unitary(const QuditCircuit& c) {
  const Dims dims(static_cast<std::size_t>(c.num_ions), c.qudit_dim);
  const auto dim = static_cast<Eigen::Index>(register_size(dims));
  Matrix u = Matrix::Identity(dim, dim);
  for (const auto& op : c.ops) {
    if (const auto* r = std::get_if<Rotation>(&op)) {
      const int t[] = {r->ion};
      u = embed_operator(dims, rotation_matrix(*r, c.qudit_dim), t) * u;
    } else {
      const auto& m = std::get<MsGate>(op);
      const int t[] = {m.ion_a, m.ion_b};
      u = embed_operator(dims, ms_matrix(m.chi, c.qudit_dim, c.qudit_dim), t) * u;
    }
  }
  return u;
}

QuditState simulate_native(const QuditCircuit& c, const QuditState& input) {
  QuditState s = input;
  for (const auto& op : c.ops) {
    if (const auto* r = std::get_if<Rotation>(&op)) {
      s = apply_unitary(s, rotation_matrix(*r, c.qudit_dim), {r->ion});
    } else {
      const auto& m = std::get<MsGate>(op);
      s = apply_unitary(s, ms_matrix(m.chi, c.qudit_dim, c.qudit_dim), {m.ion_a, m.ion_b});
    }
  }
  return s;
}

double unitary_residual(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("unitaries differ in size");
  const Complex overlap = (b.adjoint() * a).trace();
  const Complex phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : Complex{1.0, 0.0};
  return (a - phase * b).cwiseAbs().maxCoeff();
}

std::vector<NativeOp> transpile_intra(const QubitGate& gate) {
  const int ion = qubit_location(gate.qubits[0]).first;
  return pulses_for(ion_local_matrix(gate), ion);
}

std::vector<NativeOp> transpile_inter(const QubitGate& gate) {
  if (!gate.is_two_qubit()) throw ArgumentError("inter-ion transpilation needs CZ or CNOT");
  const auto [ion_c, pos_c] = qubit_location(gate.qubits[0]);
  const auto [ion_t, pos_t] = qubit_location(gate.qubits[1]);
  if (ion_c == ion_t) throw ArgumentError("control and target share an ion; use transpile_intra");

  const int pos_of[2] = {ion_c == 0 ? pos_c : pos_t, ion_c == 0 ? pos_t : pos_c};
  const Matrix id = Matrix::Identity(kEncodedQuditDim, kEncodedQuditDim);

  // CZ = e^{i pi/4} exp(-i pi/4 Z_a) exp(-i pi/4 Z_b) exp(+i pi/4 Z_a Z_b), and
  // Z_a Z_b splits into four commuting products Z_p (x) Z_q of level-pair
  // operators. Each exp(+i pi/4 Z_p (x) Z_q) is an MS gate conjugated by
  // W = H01 P, where P brings the pair to levels {0, 1} (reversed on ion 0
  // to flip the sign).
  std::array<Matrix, 2> pending{id, id};
  Matrix target_had = id;
  if (gate.kind == QubitGateKind::CNOT) {
    // CNOT = H_t CZ H_t.
    Matrix h2(2, 2);
    h2 << 1, 1, 1, -1;
    h2 /= std::sqrt(2.0);
    const Matrix id2 = Matrix::Identity(2, 2);
    target_had = pos_of[ion_t] == 0 ? kron(h2, id2) : kron(id2, h2);
    pending[static_cast<std::size_t>(ion_t)] = target_had;
  }
  std::vector<NativeOp> ops;
  auto flush = [&](int ion, const Matrix& u) {
    auto p = pulses_for(u, ion);
    ops.insert(ops.end(), p.begin(), p.end());
  };
  const auto pairs_a = z_pairs(pos_of[0]);
  const auto pairs_b = z_pairs(pos_of[1]);
  for (const auto& pa : pairs_a) {
    for (const auto& pb : pairs_b) {
      const Matrix wa = hadamard01() * level_permutation(pa[1], pa[0]);
      const Matrix wb = hadamard01() * level_permutation(pb[0], pb[1]);
      flush(0, wa * pending[0]);
      flush(1, wb * pending[1]);
      ops.emplace_back(MsGate{0, 1, kPi / 4});
      pending[0] = wa.adjoint();
      pending[1] = wb.adjoint();
    }
  }
  std::array<Matrix, 2> last{diag_phase_z(pos_of[0], kPi / 4) * pending[0],
                             diag_phase_z(pos_of[1], kPi / 4) * pending[1]};
  last[static_cast<std::size_t>(ion_t)] = target_had * last[static_cast<std::size_t>(ion_t)];
  flush(0, last[0]);
  flush(1, last[1]);

  QuditCircuit check;
  check.ops = ops;
  QubitCircuit target;
  target.gates.push_back(gate);
  const double residual = unitary_residual(native_circuit_unitary(check), qubit_circuit_unitary(target));
  if (!(residual <= kInterTolerance)) {
    throw VerificationError("inter-ion " + std::string(gate_name(gate.kind)) + " construction failed verification (residual " +
                            std::to_string(residual) + ")");
  }
  return ops;
}

TranspileResult transpile_circuit(const QubitCircuit& circuit, const TranspileOptions& options) {
  circuit.validate();
  TranspileResult res;
  res.circuit.num_ions = ions_for(circuit.num_qubits);
  res.input_gates = static_cast<int>(circuit.gates.size());
  for (const auto& g : circuit.gates) {
    const bool inter = g.is_two_qubit() && qubit_location(g.qubits[0]).first != qubit_location(g.qubits[1]).first;
    auto ops = inter ? transpile_inter(g) : transpile_intra(g);
    res.circuit.ops.insert(res.circuit.ops.end(), ops.begin(), ops.end());
  }
  validate_native(res.circuit);
  res.residual = res.circuit.ops.empty() && circuit.gates.empty()
                     ? 0.0
                     : unitary_residual(native_circuit_unitary(res.circuit), qubit_circuit_unitary(circuit));
  if (!(res.residual <= options.tolerance)) {
    throw VerificationError("transpiled circuit differs from input (residual " + std::to_string(res.residual) + ")");
  }
  res.rotation_time_known = options.rabi_frequency > 0.0;
  double t = res.circuit.ms_count() * options.ms_duration;
  if (res.rotation_time_known) {
    for (const auto& op : res.circuit.ops) {
      if (const auto* r = std::get_if<Rotation>(&op)) t += std::abs(r->theta) / options.rabi_frequency;
    }
  }
  res.wall_time = t;
  return res;
}

}  // namespace ququart
