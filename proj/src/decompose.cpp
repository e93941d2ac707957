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

#include "qdb/decompose.hpp"

#include <algorithm>
#include <set>

namespace qdb {
namespace {

bool needs_chain(const GateSpec& g) { return g.kind == GateKind::kX && g.controls.size() >= 3; }

GateSpec toffoli(int c1, int c2, int target) { return gates::x(target).ctrl(c1).ctrl(c2); }

// Emits the V-chain for one gate whose controls are all positive.
void emit_chain(Circuit& out, const std::vector<int>& controls, int target,
                const std::vector<int>& anc) {
  const std::size_t tau = controls.size();
  std::vector<GateSpec> compute;
  compute.push_back(toffoli(controls[0], controls[1], anc[0]));
  for (std::size_t i = 2; i + 1 < tau; ++i) compute.push_back(toffoli(controls[i], anc[i - 2], anc[i - 1]));
  for (const GateSpec& g : compute) out.append(g);
  out.append(toffoli(controls[tau - 1], anc[tau - 3], target));
  for (auto it = compute.rbegin(); it != compute.rend(); ++it) out.append(*it);
}

}  // namespace

int vchain_ancillas(int controls) { return controls > 2 ? controls - 2 : 0; }

Circuit decompose_mcx(const Circuit& circuit, const DecompositionConfig& config) {
  if (config.mode == DecompositionMode::kKeepMulticontrol) return circuit;

  int needed = 0;
  for (const GateSpec& g : circuit.gates()) {
    if (needs_chain(g)) needed = std::max(needed, vchain_ancillas(control_count(g)));
  }
  Circuit out = circuit;
  std::vector<int> fresh;
  if (config.ancilla_policy == AncillaPolicy::kCleanAllocated && needed > 0) {
    const int first = out.n_qubits();
    out.widen(first + needed, Register::kAncilla);
    for (int i = 0; i < needed; ++i) fresh.push_back(first + i);
  }

  Circuit result(out.n_qubits());
  for (int q = 0; q < out.n_qubits(); ++q) result.set_label(q, out.label(q));
  const std::vector<int> labelled_a = circuit.qubits_labelled(Register::kAncilla);

  for (const GateSpec& g : circuit.gates()) {
    if (!needs_chain(g)) {
      result.append(g);
      continue;
    }
    const int need = vchain_ancillas(control_count(g));
    std::vector<int> anc;
    if (config.ancilla_policy == AncillaPolicy::kCleanAllocated) {
      anc.assign(fresh.begin(), fresh.begin() + need);
    } else {
      std::set<int> used(g.targets.begin(), g.targets.end());
      for (const Control& c : g.controls) used.insert(c.qubit);
      for (int q : labelled_a) {
        if (static_cast<int>(anc.size()) == need) break;
        if (!used.contains(q)) anc.push_back(q);
      }
      if (static_cast<int>(anc.size()) < need) {
        fail(ErrorKind::kCapacity, "decomposition needs " + std::to_string(need) +
                                       " clean ancillas, found " + std::to_string(anc.size()));
      }
    }
    std::vector<int> controls;
    std::vector<int> flipped;
    for (const Control& c : g.controls) {
      controls.push_back(c.qubit);
      if (c.polarity == Polarity::kZero) flipped.push_back(c.qubit);
    }
    for (int q : flipped) result.append(gates::x(q));
    emit_chain(result, controls, g.targets[0], anc);
    for (int q : flipped) result.append(gates::x(q));
  }
  return result;
}

}  // namespace qdb
