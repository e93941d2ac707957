// Copyright 2026 The qdbsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qdb/circuit.hpp"

#include <algorithm>

#include "qdb/simulator.hpp"

namespace qdb {

char register_char(Register r) { return static_cast<char>(r); }

Register register_from_char(char c) {
  switch (c) {
    case 'I': return Register::kIndex;
    case 'D': return Register::kData;
    case 'A': return Register::kAncilla;
    case 'S': return Register::kSensor;
    default: fail(ErrorKind::kParse, std::string("unknown register '") + c + "'");
  }
}

Circuit::Circuit(int n_qubits, Register default_label)
    : n_qubits_(n_qubits), labels_(static_cast<std::size_t>(std::max(0, n_qubits)), default_label) {
  if (n_qubits < 0) fail(ErrorKind::kInvalidArgument, "negative qubit count");
}

void Circuit::set_label(int q, Register r) {
  if (q < 0 || q >= n_qubits_) fail(ErrorKind::kInvalidArgument, "label qubit out of range");
  labels_[static_cast<std::size_t>(q)] = r;
}

std::vector<int> Circuit::qubits_labelled(Register r) const {
  std::vector<int> out;
  for (int q = 0; q < n_qubits_; ++q) {
    if (labels_[static_cast<std::size_t>(q)] == r) out.push_back(q);
  }
  return out;
}

Circuit& Circuit::append(GateSpec gate) {
  validate(gate, n_qubits_);
  gates_.push_back(std::move(gate));
  return *this;
}

Circuit& Circuit::append(const Circuit& other) {
  if (other.n_qubits() > n_qubits_) {
    fail(ErrorKind::kInvalidArgument, "appended circuit is wider than the target");
  }
  for (const GateSpec& g : other.gates()) append(g);
  return *this;
}

void Circuit::widen(int n_qubits, Register label) {
  if (n_qubits < n_qubits_) fail(ErrorKind::kInvalidArgument, "cannot shrink a circuit");
  labels_.resize(static_cast<std::size_t>(n_qubits), label);
  n_qubits_ = n_qubits;
}

Circuit Circuit::inverse() const {
  Circuit out = *this;
  out.gates_.clear();
  for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) out.gates_.push_back(qdb::inverse(*it));
  return out;
}

Circuit append(Circuit circuit, GateSpec gate) {
  circuit.append(std::move(gate));
  return circuit;
}

Circuit embed(const Circuit& sub, const std::vector<int>& qubit_map, int n_qubits) {
  if (qubit_map.size() != static_cast<std::size_t>(sub.n_qubits())) {
    fail(ErrorKind::kInvalidArgument, "qubit map size does not match the circuit");
  }
  Circuit out(n_qubits);
  for (int q = 0; q < sub.n_qubits(); ++q) {
    const int to = qubit_map[static_cast<std::size_t>(q)];
    if (to < 0 || to >= n_qubits) fail(ErrorKind::kInvalidArgument, "qubit map out of range");
    out.set_label(to, sub.label(q));
  }
  for (GateSpec g : sub.gates()) {
    for (int& t : g.targets) t = qubit_map[static_cast<std::size_t>(t)];
    for (Control& c : g.controls) c.qubit = qubit_map[static_cast<std::size_t>(c.qubit)];
    out.append(std::move(g));
  }
  return out;
}

Circuit add_controls(const Circuit& circuit, const std::vector<Control>& controls) {
  Circuit out(circuit.n_qubits());
  for (int q = 0; q < circuit.n_qubits(); ++q) out.set_label(q, circuit.label(q));
  for (GateSpec g : circuit.gates()) {
    g.with_controls(controls);
    out.append(std::move(g));
  }
  return out;
}

CircuitMetrics metrics(const Circuit& circuit) {
  CircuitMetrics m;
  std::vector<int> level(static_cast<std::size_t>(circuit.n_qubits()), 0);
  for (const GateSpec& g : circuit.gates()) {
    int start = 0;
    for (int q : g.targets) start = std::max(start, level[static_cast<std::size_t>(q)]);
    for (const Control& c : g.controls) start = std::max(start, level[static_cast<std::size_t>(c.qubit)]);
    for (int q : g.targets) level[static_cast<std::size_t>(q)] = start + 1;
    for (const Control& c : g.controls) level[static_cast<std::size_t>(c.qubit)] = start + 1;
    m.depth = std::max(m.depth, start + 1);
    ++m.gate_count;
    if (g.kind == GateKind::kX && g.controls.size() >= 2) ++m.mcx_count;
    m.max_controls = std::max(m.max_controls, control_count(g));
  }
  return m;
}

void run(const Circuit& circuit, StateVector& state) {
  if (circuit.n_qubits() != state.n_qubits()) {
    fail(ErrorKind::kInvalidArgument, "circuit has " + std::to_string(circuit.n_qubits()) +
                                          " qubits, state has " + std::to_string(state.n_qubits()));
  }
  for (const GateSpec& g : circuit.gates()) apply(state, g);
}

StateVector simulate(const Circuit& circuit, StateVector initial) {
  run(circuit, initial);
  return initial;
}

StateVector simulate(const Circuit& circuit) { return simulate(circuit, StateVector(circuit.n_qubits())); }

}  // namespace qdb
