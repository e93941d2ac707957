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

#include "qdb/circuit.hpp"

namespace qdb {

enum class DecompositionMode { kKeepMulticontrol, kToffoliChain };

enum class AncillaPolicy {
  kCleanBorrowed,   // reuse qubits labelled A that the gate does not touch; caller keeps them |0>
  kCleanAllocated,  // append fresh |0> ancillas labelled A
};

struct DecompositionConfig {
  DecompositionMode mode = DecompositionMode::kToffoliChain;
  AncillaPolicy ancilla_policy = AncillaPolicy::kCleanAllocated;
};

/// Ancillas a tau-control X needs in the Toffoli V-chain.
int vchain_ancillas(int controls);

/// Rewrites every X gate with three or more controls as a V-chain of Toffolis
/// (2 tau - 3 of them) over tau - 2 clean ancillas that are returned to |0>.
/// Negative controls are conjugated with X. Other gates pass through unchanged.
/// Throws kCapacity when the borrowed policy finds too few ancillas.
Circuit decompose_mcx(const Circuit& circuit, const DecompositionConfig& config = {});

}  // namespace qdb
