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

#include "qdb/simulator.hpp"

#include <algorithm>
#include <cmath>

#include "qdb/entanglement.hpp"
#include "qdb/kernels.hpp"

namespace qdb {

namespace kp = kernels::parallel;

void apply(StateVector& state, const GateSpec& gate) {
  validate(gate, state.n_qubits());
  const kernels::ControlMask c = kernels::make_control_mask(gate.controls);
  auto amps = state.mutable_amplitudes();
  switch (gate.kind) {
    case GateKind::kX:
      kp::apply_x(amps, gate.targets[0], c);
      break;
    case GateKind::kPhase:
      kp::apply_phase(amps, gate.targets[0], std::polar(1.0, gate.param), c);
      break;
    case GateKind::kSwap:
      kp::apply_swap(amps, gate.targets[0], gate.targets[1], c);
      break;
    case GateKind::kTwoLevel: {
      const BasisIndex all = (BasisIndex{1} << gate.targets.size()) - 1;
      kp::apply_two_level(amps, scatter_bits(all, gate.targets),
                          scatter_bits(gate.level_a, gate.targets),
                          scatter_bits(gate.level_b, gate.targets), gate.param, c);
      break;
    }
    default:
      kp::apply_matrix2(amps, gate.targets[0], single_target_matrix(gate), c);
      break;
  }
}

StateVector apply_gate(StateVector state, const GateSpec& gate) {
  apply(state, gate);
  return state;
}

StateVector apply_two_level_rotation(StateVector state, BasisIndex a, BasisIndex b, double theta) {
  if (a == b) fail(ErrorKind::kInvalidArgument, "two-level rotation needs distinct levels");
  if (a >= state.dim() || b >= state.dim()) {
    fail(ErrorKind::kInvalidArgument, "two-level rotation level out of range");
  }
  std::vector<int> all(static_cast<std::size_t>(state.n_qubits()));
  for (int q = 0; q < state.n_qubits(); ++q) all[static_cast<std::size_t>(q)] = q;
  apply(state, gates::two_level(all, a, b, theta));
  return state;
}

Projection project(const StateVector& state, const BasisPredicate& subspace) {
  StateVector out = state;
  auto amps = out.mutable_amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if (!subspace(i)) amps[i] = 0.0;
  }
  const double p = out.norm_squared();
  if (p < tol::kZeroProbability) {
    fail(ErrorKind::kZeroProbability, "projection onto an unoccupied subspace");
  }
  kp::scale(amps, 1.0 / std::sqrt(p));
  return {std::move(out), p};
}

Projection project(const StateVector& state, BasisIndex mask, BasisIndex value) {
  return project(state, [mask, value](BasisIndex i) { return (i & mask) == value; });
}

double probability(const StateVector& state, BasisIndex mask, BasisIndex value) {
  return kp::masked_probability(state.amplitudes(), mask, value);
}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::vector<double> marginal_distribution(const StateVector& state, const std::vector<int>& qubits) {
  for (int q : qubits) {
    if (q < 0 || q >= state.n_qubits()) fail(ErrorKind::kInvalidArgument, "qubit out of range");
  }
  std::vector<double> p(std::size_t{1} << qubits.size(), 0.0);
  const auto amps = state.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) p[gather_bits(i, qubits)] += std::norm(amps[i]);
  return p;
}

namespace {

BasisIndex draw(const std::vector<double>& cumulative, Rng& rng) {
  const double u = rng.uniform() * cumulative.back();
  const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
  BasisIndex v = static_cast<BasisIndex>(it - cumulative.begin());
  if (v >= cumulative.size()) v = cumulative.size() - 1;
  return v;
}

std::vector<double> cumulative_of(const StateVector& state, const std::vector<int>& qubits) {
  std::vector<double> p = marginal_distribution(state, qubits);
  for (std::size_t i = 1; i < p.size(); ++i) p[i] += p[i - 1];
  return p;
}

}  // namespace

Measurement sample_measure(const StateVector& state, const std::vector<int>& qubits, Rng& rng) {
  const BasisIndex outcome = draw(cumulative_of(state, qubits), rng);
  Projection proj = project(state, scatter_bits(~BasisIndex{0}, qubits), scatter_bits(outcome, qubits));
  return {outcome, std::move(proj.state)};
}

Measurement sample_measure(const StateVector& state, const std::vector<int>& qubits,
                           std::uint64_t seed) {
  Rng rng(seed);
  return sample_measure(state, qubits, rng);
}

std::vector<BasisIndex> sample_outcomes(const StateVector& state, const std::vector<int>& qubits,
                                        std::size_t shots, Rng& rng) {
  const std::vector<double> cumulative = cumulative_of(state, qubits);
  std::vector<BasisIndex> out(shots);
  for (auto& o : out) o = draw(cumulative, rng);
  return out;
}

StateVector add_ancillas(const StateVector& state, int count, BasisIndex value) {
  if (count < 0) fail(ErrorKind::kInvalidArgument, "negative ancilla count");
  if (count == 0) return state;
  if (count < 63 && value >= (BasisIndex{1} << count)) {
    fail(ErrorKind::kInvalidArgument, "ancilla value does not fit");
  }
  StateVector out(state.n_qubits() + count);
  auto dst = out.mutable_amplitudes();
  dst[0] = 0.0;
  const BasisIndex offset = value << state.n_qubits();
  const auto src = state.amplitudes();
  for (std::size_t i = 0; i < src.size(); ++i) dst[offset | i] = src[i];
  return out;
}

Complex overlap(const StateVector& a, const StateVector& b) {
  if (a.n_qubits() != b.n_qubits()) fail(ErrorKind::kInvalidArgument, "overlap of unequal widths");
  return kp::inner_product(a.amplitudes(), b.amplitudes());
}

double distance_up_to_phase(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) return 2.0;
  const Complex ov = overlap(a, b);
  const Complex g = std::abs(ov) > 0 ? ov / std::abs(ov) : Complex{1.0};
  double worst = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) worst = std::max(worst, std::abs(a[i] * g - b[i]));
  return worst;
}

bool equal_up_to_phase(const StateVector& a, const StateVector& b, double tolerance) {
  return distance_up_to_phase(a, b) <= tolerance;
}

StateVector extract_subsystem(const StateVector& state, const std::vector<int>& qubits,
                              double tolerance) {
  const double purity = subsystem_purity(state, qubits);
  if (purity < 1.0 - tolerance) {
    fail(ErrorKind::kSemantic, "subsystem is entangled with the rest (purity " +
                                   std::to_string(purity) + ")");
  }
  // Any rest configuration with weight carries the subsystem state; take the largest.
  const auto amps = state.amplitudes();
  std::size_t best = 0;
  for (std::size_t i = 1; i < amps.size(); ++i) {
    if (std::norm(amps[i]) > std::norm(amps[best])) best = i;
  }
  const BasisIndex sub_mask = scatter_bits(~BasisIndex{0}, qubits);
  const BasisIndex rest = best & ~sub_mask;
  std::vector<Complex> v(std::size_t{1} << qubits.size());
  for (std::size_t x = 0; x < v.size(); ++x) v[x] = amps[rest | scatter_bits(x, qubits)];
  double n2 = 0.0;
  for (const Complex& c : v) n2 += std::norm(c);
  const double inv = 1.0 / std::sqrt(n2);
  for (Complex& c : v) c *= inv;
  return StateVector::from_amplitudes(std::move(v), 1e-9);
}

}  // namespace qdb
