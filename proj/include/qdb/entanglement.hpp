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

#include <vector>

#include "qdb/state_vector.hpp"

namespace qdb {

/// Schmidt data of a pure state across a bipartition.
struct EntanglementReport {
  std::vector<double> schmidt_coefficients;  // descending, non-negative
  int schmidt_rank = 0;                      // coefficients above tol::kSchmidtRank
  double entropy_bits = 0.0;                 // -sum lambda^2 log2 lambda^2
  double purity = 1.0;                       // Tr(rho_A^2) = sum lambda^4

  bool entangled() const { return schmidt_rank > 1; }
};

/// Decomposes `state` across (`subsystem`, rest). The subsystem must be a proper
/// nonempty subset of the qubits; throws kInvalidArgument otherwise.
EntanglementReport schmidt(const StateVector& state, const std::vector<int>& subsystem);

/// Purity of the reduced state on `subsystem`; 1 for an empty or full subsystem.
double subsystem_purity(const StateVector& state, const std::vector<int>& subsystem);

}  // namespace qdb
