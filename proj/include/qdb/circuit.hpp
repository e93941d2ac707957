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

#pragma once

#include <string>
#include <vector>

#include "qdb/gate.hpp"
#include "qdb/state_vector.hpp"

namespace qdb {

/// Register a qubit belongs to: index, data, ancilla, sensor.
enum class Register : char { kIndex = 'I', kData = 'D', kAncilla = 'A', kSensor = 'S' };

char register_char(Register r);
Register register_from_char(char c);

/// Ordered gate list over a fixed qubit count. Every appended gate is validated.
class Circuit {
 public:
  explicit Circuit(int n_qubits = 0, Register default_label = Register::kIndex);

  int n_qubits() const { return n_qubits_; }
  const std::vector<GateSpec>& gates() const { return gates_; }
  std::size_t size() const { return gates_.size(); }
  bool empty() const { return gates_.empty(); }

  Register label(int q) const { return labels_.at(static_cast<std::size_t>(q)); }
  const std::vector<Register>& labels() const { return labels_; }
  void set_label(int q, Register r);
  std::vector<int> qubits_labelled(Register r) const;

  Circuit& append(GateSpec gate);
  /// Appends `other` gate by gate; `other` may have fewer qubits.
  Circuit& append(const Circuit& other);
  /// Grows the register; existing gates are unaffected.
  void widen(int n_qubits, Register label = Register::kAncilla);

  Circuit inverse() const;

  friend bool operator==(const Circuit&, const Circuit&) = default;

 private:
  int n_qubits_;
  std::vector<Register> labels_;
  std::vector<GateSpec> gates_;
};

Circuit append(Circuit circuit, GateSpec gate);

/// Copy of `sub` acting on `qubit_map[q]` instead of q, inside an `n_qubits` register.
Circuit embed(const Circuit& sub, const std::vector<int>& qubit_map, int n_qubits);

/// Adds `controls` to every gate of `circuit`.
Circuit add_controls(const Circuit& circuit, const std::vector<Control>& controls);

struct CircuitMetrics {
  int depth = 0;
  std::size_t gate_count = 0;
  std::size_t mcx_count = 0;  // X gates with two or more controls
  int max_controls = 0;

  friend bool operator==(const CircuitMetrics&, const CircuitMetrics&) = default;
};

/// Depth is the longest chain of gates that share a qubit (targets or controls).
CircuitMetrics metrics(const Circuit& circuit);

void run(const Circuit& circuit, StateVector& state);
StateVector simulate(const Circuit& circuit, StateVector initial);
/// Simulates from |0...0>.
StateVector simulate(const Circuit& circuit);

}  // namespace qdb
