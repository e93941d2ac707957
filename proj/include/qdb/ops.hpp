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

// Database operations: prepare, write, read-out, remove, permute. Each unitary
// operation is built as a Circuit, simulated, recorded in `last_circuit`, and
// appended to the state's preparation circuit. Entry arguments are logical
// indices.

#include <optional>

#include "qdb/qdb.hpp"

namespace qdb {

/// Gates preparing sqrt((l+1)/(k+l))|0> + sqrt(1/(k+l)) sum_{j=1}^{k-1} |j> on
/// `qubits` (qubits[0] least significant) from |0...0>. Rotations that reduce
/// to the identity are omitted, so a power-of-two k with l = 0 yields only
/// unconditioned Y(1/2) gates. k = 1 yields no gates.
Circuit prepare_circuit(int k, int l, const std::vector<int>& qubits, int n_qubits);
Circuit prepare_circuit(int k, int l);

/// Walsh-Hadamard prepare; throws kInvalidArgument unless k is a power of two.
QdbState prepare_balanced(int k, int data_width);
/// Reservoir prepare for any k >= 1 (k = 1 is the trivial database).
QdbState prepare_general(int k, int l, int data_width);
/// prepare_general followed by a write for every nonzero entry.
QdbState build(const QdbDescriptor& descriptor);

/// Stores `value` at entry f through a sensor register prepared in u_d|value>.
/// The sensor stays in product with the database.
QdbState write(QdbState qdb, int f, std::uint64_t value);
/// Conditional-SWAP write; entangles the sensor with the database whenever value != 0.
QdbState write_swap_conditional(QdbState qdb, int f, std::uint64_t value);

/// Returns the sensor to |0> using its known label.
QdbState release_sensor(QdbState qdb);

/// CNOT copy of entry f's data into the read-out register A (created on first use).
QdbState read_copy(QdbState qdb, int f);
/// Copies every entry at once: plain CNOT fan-out D -> A.
QdbState read_copy_all(QdbState qdb);

struct ReadoutResult {
  StateVector data_state;  // over the data qubits only
  double probability = 0.0;
  QdbState collapsed;
};
/// Projective read-out of entry f; consumes the database.
ReadoutResult read_projective(const QdbState& qdb, int f);
/// Probability of each logical entry under a projective read of the index.
std::vector<double> read_probabilities(const QdbState& qdb);

/// Resets entry f's data with a sensor copy of its label, then merges its
/// amplitude into the reservoir with a two-level rotation.
QdbState remove_reservoir(QdbState qdb, int f);

struct RemovalOutcome {
  double success_probability = 0.0;
  std::optional<QdbState> on_success;  // renormalised database without entry f
  std::optional<QdbState> on_failure;  // collapsed onto entry f
};
/// Binary measurement of "index == f"; both outcomes are returned when possible.
RemovalOutcome remove_projective(const QdbState& qdb, int f);

/// Moves entry j to logical index pi(j) with two-level X gates on the index register.
QdbState permute(QdbState qdb, const Permutation& pi);
QdbState transpose(QdbState qdb, int i, int j);

/// Gates exchanging the index-register values a and b (all other values fixed).
std::vector<GateSpec> index_transposition_gates(const std::vector<int>& index_qubits,
                                                BasisIndex a, BasisIndex b);

/// Gates multiplying the all-zero state of `qubits` by e^{i phi}.
std::vector<GateSpec> zero_state_phase(const std::vector<int>& qubits, double phi);

/// Applies `circuit` (over the current qubit count) to the state and records it.
void apply_recorded(QdbState& qdb, const Circuit& circuit);
/// Appends `count` |0> qubits to the layout register `reg` and returns their positions.
std::vector<int> allocate_qubits(QdbState& qdb, std::vector<int> QdbLayout::*reg, int count);

/// Throws kSemantic unless u_d maps |0...0> to itself.
void check_data_transform(const Circuit& u_d, int data_width);

}  // namespace qdb
