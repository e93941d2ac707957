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

// Database extension. Two routes add l new entries holding empty data:
//
//  * extend(): exact amplitude amplification moves weight onto the reservoir
//    |0>_I|0>_D, then unfold() splits the reservoir into new index values
//    behind a fresh index qubit. Needs a unitary that prepares the database.
//  * extend_imbalanced(): the database was prepared with the reservoir already
//    holding l spare units, so only the unfold stage runs, over z new qubits.

#include <optional>
#include <string>

#include "qdb/qdb.hpp"

namespace qdb {

/// Parameters of one amplitude transfer for a balanced k-entry database.
struct AmplificationPlan {
  int k = 0;
  int l = 0;
  double m_star = 0.0;
  int n = 0;
  int sign = -1;  // the sign in front of asin(1/sqrt(k+l))
  int m = 0;      // standard steps, floor(m_star)
  double final_phi = 0.0;
  double final_rho = 0.0;
  double target_amplitude = 0.0;  // sqrt((l+1)/(k+l))
  double predicted_amplitude = 0.0;
  double residual = 0.0;
  // Phase put on the reservoir branch after the last step so that it shares
  // the phase of the other branches.
  double phase_correction = 0.0;
  bool noop = false;  // l == 0
};

/// Chooses the smallest positive m* over n in {0,1,2} and both signs, then
/// solves the final step's (phi, rho). Throws kConvergence when the residual
/// exceeds 1e-10 and kInvalidArgument unless k >= 2 and 0 <= l <= k.
AmplificationPlan plan_transfer(int k, int l);

/// Amplitude of the reservoir after applying the plan to a balanced database,
/// evaluated in the two-dimensional invariant subspace.
Complex transfer_amplitude(int k, int m, double final_phi, double final_rho);

std::string plan_to_json(const AmplificationPlan& plan);

/// Q = -U S_0(phi) U^dagger S_chi(rho), without the global sign, as gates.
Circuit amplification_step(const Circuit& u_qdb, double phi, double rho);

/// Applies the m standard steps and the final solved step. `u_qdb` must prepare
/// the current state from |0...0> (checked to 1e-8); the database must be balanced.
QdbState transfer(QdbState qdb, const AmplificationPlan& plan, const Circuit& u_qdb);

/// Adds one index qubit, rotates `count` spare reservoir units onto it and
/// spreads them over `count` new entries.
QdbState unfold(QdbState qdb, int count);

struct ExtendResult {
  QdbState state;
  std::vector<AmplificationPlan> plans;  // one per transfer chunk
};
/// Transfer + unfold in chunks of at most the current entry count. Uses
/// `u_qdb` for the first transfer, or the state's preparation circuit.
ExtendResult extend(QdbState qdb, int l, std::optional<Circuit> u_qdb = std::nullopt);

enum class SecondStageRoute { kDirect, kMarker };

/// Counts and closed-form amplitudes of an imbalanced extension.
struct ExtendPlan {
  int k = 0;
  int l = 0;
  int z = 1;
  int l_prime = 0;
  int l_dprime = 1;  // 1 when no second stage runs
  bool second_stage = false;
  double alpha = 0.0;  // reservoir
  double beta = 0.0;   // pre-existing entries
  double gamma = 0.0;  // new entries
  int new_entries = 0;

  bool balanced() const;
};

/// Throws kCapacity when l exceeds (2^z - 1) k, or when the second stage needs
/// more values than the index register has. `l_dprime` defaults to l - l'.
ExtendPlan plan_imbalanced(int k, int l, int z, int index_width,
                           std::optional<int> l_dprime = std::nullopt);

/// Extends a database that was prepared with l spare reservoir units.
/// z = 1 rotates the spare units onto one new qubit and prepares l entries
/// under it; z >= 2 prepares l' + 1 values on the new qubits conditioned on
/// index 0 and, when l > 2^z - 1, spreads each new value over l'' index values.
QdbState extend_imbalanced(QdbState qdb, int l, int z,
                           SecondStageRoute route = SecondStageRoute::kDirect,
                           std::optional<int> l_dprime = std::nullopt);

struct OverlapCheck {
  double before_formula = 0.0;
  double after_formula = 0.0;
  double before_simulated = 0.0;
  double after_simulated = 0.0;
  bool preserved = false;  // before == after
  bool identical = false;  // the two databases hold the same data
};

/// Builds both databases, and both of their would-be extensions, and compares
/// the overlaps. A unitary extension would preserve them.
OverlapCheck check_no_unitary_extend(const QdbDescriptor& db1, const QdbDescriptor& db2, int l);

}  // namespace qdb
