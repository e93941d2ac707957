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

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qdb/circuit.hpp"
#include "qdb/state_vector.hpp"

namespace qdb {

/// The logical database: k entries, a reservoir of l spare units on entry 0,
/// and the data value stored at each entry.
///
/// Branch probabilities follow the reservoir pattern unless `weights` is set:
/// entry 0 carries (l + 1) units, every other live entry one unit, removed
/// entries none, all normalised by the total.
struct QdbDescriptor {
  int k = 1;
  int l = 0;
  int data_width = 1;
  /// Logical index -> computational data label. Missing entries hold 0 (empty).
  std::map<int, std::uint64_t> data;
  /// Basis transform on the data register; the stored state of entry j is u_d|data[j]>.
  std::optional<Circuit> u_d;
  std::set<int> removed;
  /// Explicit branch probabilities, size k, when the reservoir pattern no longer applies.
  std::optional<std::vector<double>> weights;

  std::uint64_t value(int j) const;
  bool occupied(int j) const { return j >= 0 && j < k && !removed.contains(j) && probability(j) > 0; }
  /// Live entries (not removed).
  int live_count() const;
  double probability(int j) const;
  std::vector<double> probabilities() const;
  bool balanced() const;

  friend bool operator==(const QdbDescriptor&, const QdbDescriptor&) = default;
};

/// Throws kInvalidArgument when the descriptor is inconsistent.
void validate(const QdbDescriptor& descriptor);

/// Physical placement of the registers. Extension qubits join the index
/// register at its high end; logical_index_map hides where new entries land.
struct QdbLayout {
  std::vector<int> index_qubits;
  std::vector<int> data_qubits;
  std::vector<int> copy_qubits;    // read-out ancilla register A
  std::vector<int> sensor_qubits;  // write sensor S
  std::vector<int> work_qubits;    // markers and other clean ancillas
  std::vector<BasisIndex> logical_index_map;

  int n_qubits() const;
  std::vector<Register> labels() const;
  BasisIndex physical_index(int logical) const { return logical_index_map.at(static_cast<std::size_t>(logical)); }
  /// Full basis index of (index value, data value) with every other register at 0.
  BasisIndex basis_index(BasisIndex index_value, BasisIndex data_value) const;
  BasisIndex index_mask() const;
  BasisIndex data_mask() const;

  friend bool operator==(const QdbLayout&, const QdbLayout&) = default;
};

/// Contiguous layout: index qubits [0, ceil_log2 k), then data qubits.
QdbLayout default_layout(int k, int data_width);

/// A simulated database. `preparation`, when present, is a unitary circuit over
/// all qubits with preparation|0...0> equal to `state` up to global phase; it
/// is lost after a projective operation.
struct QdbState {
  QdbDescriptor descriptor;
  QdbLayout layout;
  StateVector state;
  std::optional<Circuit> preparation;
  /// Circuit of the most recent unitary operation, over the pre-op qubit count
  /// widened to the post-op count.
  Circuit last_circuit;
  /// Label held by the sensor (it stores u_d|label>); nullopt once entangled.
  std::optional<std::uint64_t> sensor_value = 0;
  /// Entries whose data has been copied into the read-out register.
  std::set<int> copied;
  /// Set by projective read-out; the database no longer exists as a superposition.
  bool consumed = false;

  Circuit empty_circuit() const;
};

/// Transposition-decomposable bijection on [0, k).
class Permutation {
 public:
  /// Throws kInvalidArgument unless `mapping` is a bijection on [0, size).
  explicit Permutation(std::vector<int> mapping);
  static Permutation identity(int k);
  static Permutation transposition(int k, int i, int j);

  int size() const { return static_cast<int>(map_.size()); }
  int operator()(int j) const { return map_.at(static_cast<std::size_t>(j)); }
  const std::vector<int>& mapping() const { return map_; }

  Permutation inverse() const;
  /// (this o first)(j) = this(first(j)).
  Permutation after(const Permutation& first) const;
  /// Transpositions whose left-to-right application realises the map j -> pi(j).
  /// At most size() - 1 of them.
  std::vector<std::pair<int, int>> transpositions() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> map_;
};

}  // namespace qdb
