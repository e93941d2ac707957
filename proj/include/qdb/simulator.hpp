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

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "qdb/gate.hpp"
#include "qdb/state_vector.hpp"

namespace qdb {

/// In-place gate application. Validates the gate against the state's width.
void apply(StateVector& state, const GateSpec& gate);
StateVector apply_gate(StateVector state, const GateSpec& gate);

/// Givens rotation in the plane of full-register basis states a and b:
/// |a> -> cos(theta)|a> + sin(theta)|b>, |b> -> -sin(theta)|a> + cos(theta)|b>.
StateVector apply_two_level_rotation(StateVector state, BasisIndex a, BasisIndex b, double theta);

struct Projection {
  StateVector state;
  double probability = 0.0;
};

using BasisPredicate = std::function<bool(BasisIndex)>;

/// Projects onto the span of basis states accepted by `subspace` and renormalizes.
/// Throws kZeroProbability when the projected weight is below 1e-14.
Projection project(const StateVector& state, const BasisPredicate& subspace);
/// Faster form for predicates of the shape (index & mask) == value.
Projection project(const StateVector& state, BasisIndex mask, BasisIndex value);
double probability(const StateVector& state, BasisIndex mask, BasisIndex value);

/// Seeded generator; every stochastic operation draws from one of these.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  /// Uniform double in [0, 1) built from the top 53 bits of one draw.
  double uniform();

 private:
  std::mt19937_64 engine_;
};

struct Measurement {
  /// Bit i of `outcome` is the measured value of qubits[i].
  BasisIndex outcome = 0;
  StateVector state;
};

/// Born distribution of the listed qubits; entry v is the probability of outcome v.
std::vector<double> marginal_distribution(const StateVector& state, const std::vector<int>& qubits);

Measurement sample_measure(const StateVector& state, const std::vector<int>& qubits, Rng& rng);
Measurement sample_measure(const StateVector& state, const std::vector<int>& qubits,
                           std::uint64_t seed);
/// Repeated sampling from one distribution without collapsing the state.
std::vector<BasisIndex> sample_outcomes(const StateVector& state, const std::vector<int>& qubits,
                                        std::size_t shots, Rng& rng);

/// Appends `count` qubits at the high end prepared in the basis state `value`.
StateVector add_ancillas(const StateVector& state, int count, BasisIndex value = 0);

/// <a|b>. Throws kInvalidArgument on dimension mismatch.
Complex overlap(const StateVector& a, const StateVector& b);

/// Largest |a_i e^{i g} - b_i| after choosing the global phase g that maximises |<a|b>|.
double distance_up_to_phase(const StateVector& a, const StateVector& b);
bool equal_up_to_phase(const StateVector& a, const StateVector& b,
                       double tolerance = tol::kStateEquality);

/// Pure state of `qubits` when it is in product with the rest (within `tolerance`
/// on the subsystem purity); throws kSemantic when the subsystem is entangled.
StateVector extract_subsystem(const StateVector& state, const std::vector<int>& qubits,
                              double tolerance = 1e-9);

}  // namespace qdb
