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

#include "ququart/circuit_io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "ququart/errors.hpp"

namespace ququart {
namespace {

std::vector<std::string> split_words(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

std::string_view strip_comment(std::string_view line) {
  const auto hash = line.find('#');
  return hash == std::string_view::npos ? line : line.substr(0, hash);
}

template <typename F>
void for_each_line(std::string_view text, F&& f) {
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = text.find('\n', pos);
    std::string_view line = text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++number;
    const auto words = split_words(strip_comment(line));
    if (!words.empty()) f(words, number);
    if (end == std::string_view::npos) break;
    pos = end + 1;
  }
}

int parse_int(const std::string& s, int line, const char* what) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ParseError(std::string("expected integer ") + what + ", got '" + s + "'", line);
  }
  return v;
}

double parse_factor(std::string_view f) {
  if (f == "pi") return std::numbers::pi;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
  if (f.empty() || ec != std::errc{} || ptr != f.data() + f.size()) {
    throw ArgumentError("bad angle factor '" + std::string(f) + "'");
  }
  return v;
}

double parse_angle_at(const std::string& s, int line) {
  try {
    return parse_angle(s);
  } catch (const ArgumentError& e) {
    throw ParseError(e.what(), line);
  }
}

void expect_words(const std::vector<std::string>& w, std::size_t n, int line) {
  if (w.size() != n) {
    throw ParseError("'" + w[0] + "' takes " + std::to_string(n - 1) + " arguments, got " + std::to_string(w.size() - 1),
                     line);
  }
}

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

double parse_angle(std::string_view text) {
  std::string_view s = text;
  double sign = 1.0;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    if (s.front() == '-') sign = -1.0;
    s.remove_prefix(1);
  }
  if (s.empty()) throw ArgumentError("empty angle");
  double value = 1.0;
  char op = '*';
  std::size_t pos = 0;
  while (true) {
    const auto next = s.find_first_of("*/", pos);
    const double f = parse_factor(s.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos));
    if (op == '*') {
      value *= f;
    } else {
      if (f == 0.0) throw ArgumentError("division by zero in angle");
      value /= f;
    }
    if (next == std::string_view::npos) break;
    op = s[next];
    pos = next + 1;
  }
  if (!std::isfinite(value)) throw ArgumentError("angle is not finite");
  return sign * value;
}

QubitCircuit parse_qubit_circuit(std::string_view text) {
  QubitCircuit c;
  bool seen_gate = false, seen_qubits = false;
  for_each_line(text, [&](const std::vector<std::string>& w, int line) {
    if (w[0] == "qubits") {
      expect_words(w, 2, line);
      if (seen_gate || seen_qubits) throw ParseError("'qubits' must appear once, before any gate", line);
      c.num_qubits = parse_int(w[1], line, "qubit count");
      if (c.num_qubits < 1 || c.num_qubits > kMaxQubits) throw ParseError("qubit count must lie in [1, 4]", line);
      seen_qubits = true;
      return;
    }
    QubitGate g;
    try {
      g.kind = parse_gate_kind(w[0]);
    } catch (const ArgumentError& e) {
      throw ParseError(e.what(), line);
    }
    if (g.is_two_qubit()) {
      expect_words(w, 3, line);
      g.qubits = {parse_int(w[1], line, "control"), parse_int(w[2], line, "target")};
    } else {
      expect_words(w, 3, line);
      g.qubits = {parse_int(w[1], line, "qubit"), 0};
      g.angle = parse_angle_at(w[2], line);
    }
    const int arity = g.is_two_qubit() ? 2 : 1;
    for (int k = 0; k < arity; ++k) {
      const int q = g.qubits[static_cast<std::size_t>(k)];
      if (q < 0 || q >= c.num_qubits) throw ParseError("qubit " + std::to_string(q) + " out of range", line);
    }
    if (arity == 2 && g.qubits[0] == g.qubits[1]) throw ParseError("control and target coincide", line);
    c.gates.push_back(g);
    seen_gate = true;
  });
  return c;
}

std::string format_qubit_circuit(const QubitCircuit& c) {
  std::ostringstream out;
  out << "qubits " << c.num_qubits << '\n';
  for (const auto& g : c.gates) {
    out << gate_name(g.kind) << ' ' << g.qubits[0];
    if (g.is_two_qubit()) {
      out << ' ' << g.qubits[1];
    } else {
      out << ' ' << g17(g.angle);
    }
    out << '\n';
  }
  return out.str();
}

QuditCircuit parse_native_circuit(std::string_view text) {
  QuditCircuit c;
  c.ops.clear();
  for_each_line(text, [&](const std::vector<std::string>& w, int line) {
    if (w[0] == "ions") {
      expect_words(w, 2, line);
      c.num_ions = parse_int(w[1], line, "ion count");
    } else if (w[0] == "dims") {
      expect_words(w, 2, line);
      c.qudit_dim = parse_int(w[1], line, "dimension");
    } else if (w[0] == "r") {
      expect_words(w, 6, line);
      Rotation r{parse_int(w[1], line, "ion"), parse_int(w[2], line, "level"), parse_int(w[3], line, "level"),
                 parse_angle_at(w[4], line), parse_angle_at(w[5], line)};
      c.ops.emplace_back(r);
    } else if (w[0] == "ms") {
      expect_words(w, 4, line);
      c.ops.emplace_back(MsGate{parse_int(w[1], line, "ion"), parse_int(w[2], line, "ion"), parse_angle_at(w[3], line)});
    } else {
      throw ParseError("unknown native statement '" + w[0] + "'", line);
    }
  });
  validate_native(c);
  return c;
}

std::string format_native_circuit(const QuditCircuit& c, std::string_view source_hash) {
  std::ostringstream out;
  out << "# native circuit\n";
  out << "# tool=ququart version=" << QUQUART_VERSION << '\n';
  if (!source_hash.empty()) out << "# source_hash=" << source_hash << '\n';
  out << "# encoding: " << c.encoding << '\n';
  out << "ions " << c.num_ions << '\n';
  out << "dims " << c.qudit_dim << '\n';
  for (const auto& op : c.ops) {
    if (const auto* r = std::get_if<Rotation>(&op)) {
      out << "r " << r->ion << ' ' << r->lower << ' ' << r->upper << ' ' << g17(r->phi) << ' ' << g17(r->theta) << '\n';
    } else {
      const auto& m = std::get<MsGate>(op);
      out << "ms " << m.ion_a << ' ' << m.ion_b << ' ' << g17(m.chi) << '\n';
    }
  }
  return out.str();
}

std::string content_hash(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string transpile_report(const TranspileResult& r, std::string_view source_hash, double tolerance) {
  nlohmann::ordered_json j;
  j["tool"] = "ququart";
  j["version"] = QUQUART_VERSION;
  j["source_hash"] = std::string(source_hash);
  j["encoding"] = r.circuit.encoding;
  j["residual"] = r.residual;
  j["tolerance"] = tolerance;
  j["verified"] = r.residual <= tolerance;
  j["input_gates"] = r.input_gates;
  j["native_ops"] = r.circuit.ops.size();
  j["rotations"] = r.circuit.rotation_count();
  j["ms_gates"] = r.circuit.ms_count();
  j["wall_time_s"] = r.wall_time;
  j["rotation_time_included"] = r.rotation_time_known;
  return j.dump(2) + "\n";
}

}  // namespace ququart
