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

// Brute-force references. Nothing here calls the statevector kernels: gate
// matrices are rebuilt from their definitions and embedded by enumerating
// basis columns, and database amplitudes come from the descriptor alone.

#include <map>
#include <set>
#include <utility>

#include <Eigen/Dense>

#include "qdb/qdb.hpp"

namespace qdb::oracle {

inline constexpr int kMaxDenseQubits = 12;

struct DenseOperator {
  int n_qubits = 0;
  Eigen::MatrixXcd matrix;

  std::size_t dim() const { return static_cast<std::size_t>(matrix.rows()); }
  bool is_unitary(double tolerance = 1e-10) const;
  StateVector apply(const StateVector& state) const;
};

/// Embedding of one gate in an n-qubit register.
DenseOperator dense_gate(const GateSpec& gate, int n_qubits);
/// Product of the gate embeddings in application order. Throws kCapacity above 12 qubits.
DenseOperator dense_operator(const Circuit& circuit);

/// Max |a_ij - b_ij| after aligning the global phase of b to a.
double operator_distance_up_to_phase(const DenseOperator& a, const DenseOperator& b);

/// Closed-form amplitudes of the database in `layout`: entry j carries
/// sqrt(p_j) |phys(j)>_I (u_d|d_j>)_D, the copy register holds u_d|d_j> for
/// copied entries, the sensor holds u_d|sensor_value>. Throws kSemantic when
/// the sensor is entangled (sensor_value empty).
std::map<BasisIndex, Complex> expected_qdb_amplitudes(const QdbDescriptor& descriptor,
                                                      const QdbLayout& layout,
                                                      std::optional<std::uint64_t> sensor_value = 0,
                                                      const std::set<int>& copied = {});
/// Same, in the default layout with no extra registers.
std::map<BasisIndex, Complex> expected_qdb_amplitudes(const QdbDescriptor& descriptor);
/// Expected amplitudes of a simulated database, read from its bookkeeping.
std::map<BasisIndex, Complex> expected_qdb_amplitudes(const QdbState& qdb);

/// Max |expected - actual| over every basis index, after aligning the global
/// phase of `actual` on the largest expected amplitude.
double amplitude_error(const std::map<BasisIndex, Complex>& expected, const StateVector& actual);

/// M_pi on ceil_log2(k) index qubits tensored with the identity on `data_width` data qubits.
DenseOperator permutation_matrix(const Permutation& pi, int data_width = 0);

/// Sum over j = 1..k-1 of <d'_j|d_j> for computational-basis data.
double data_overlap_sum(const QdbDescriptor& db1, const QdbDescriptor& db2);

/// (1 + S)/k and (1 + l + S)/(k + l) with S = data_overlap_sum.
std::pair<double, double> overlap_lemma_sides(const QdbDescriptor& db1, const QdbDescriptor& db2,
                                              int l);

}  // namespace qdb::oracle
