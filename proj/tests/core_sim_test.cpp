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

#include <gtest/gtest.h>

#include <cmath>

#include "qdb/entanglement.hpp"
#include "qdb/kernels.hpp"
#include "qdb/simulator.hpp"
#include "test_util.hpp"

namespace qdb {
namespace {

using testing::max_diff;

TEST(StateVector, StartsInZeroState) {
  const StateVector s(3);
  EXPECT_EQ(s.dim(), 8u);
  EXPECT_EQ(s[0], Complex(1.0));
  EXPECT_DOUBLE_EQ(s.norm_squared(), 1.0);
}

TEST(StateVector, RejectsUnnormalisedAmplitudes) {
  EXPECT_THROW(StateVector::from_amplitudes({1.0, 1.0}), Error);
  EXPECT_THROW(StateVector::from_amplitudes({1.0, 0.0, 0.0}), Error);
}

TEST(StateVector, EnforcesQubitCap) {
  const int saved = max_qubits();
  set_max_qubits(4);
  try {
    StateVector s(5);
    FAIL() << "expected a capacity error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kCapacity);
  }
  set_max_qubits(saved);
}

TEST(Gates, SingleGatesMatchDenseOracle) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + trial % 5;
    const GateSpec g = testing::random_gate(rng, n, 3);
    const StateVector in = testing::random_state(rng, n);
    const StateVector got = apply_gate(in, g);
    const StateVector want = oracle::dense_gate(g, n).apply(in);
    ASSERT_LT(max_diff(got, want), 1e-12) << to_string(g.kind) << " trial " << trial;
  }
}

TEST(Gates, YGateHasTheBranchProbability) {
  for (double p : {0.0, 0.1, 0.5, 0.9, 1.0}) {
    const StateVector s = apply_gate(StateVector(1), gates::y(0, p));
    EXPECT_NEAR(std::norm(s[0]), p, 1e-15);
    EXPECT_NEAR(std::norm(s[1]), 1 - p, 1e-15);
  }
}

TEST(Gates, InverseUndoesEveryGate) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    const GateSpec g = testing::random_gate(rng, 4, 2);
    const StateVector in = testing::random_state(rng, 4);
    EXPECT_LT(max_diff(apply_gate(apply_gate(in, g), inverse(g)), in), 1e-12);
  }
}

TEST(Gates, ValidationRejectsBadGates) {
  EXPECT_THROW(validate(gates::x(3), 3), Error);
  EXPECT_THROW(validate(gates::x(0).ctrl(0), 2), Error);
  EXPECT_THROW(validate(gates::y(0, 1.5), 1), Error);
  EXPECT_THROW(validate(gates::two_level({0, 1}, 2, 2, 0.1), 2), Error);
  EXPECT_THROW(validate(gates::two_level({0}, 0, 2, 0.1), 2), Error);
}

TEST(TwoLevel, ZeroesTheSecondLevel) {
  // (|a> + |b>)/sqrt(2) rotated by -atan2(1, 1) ends in |a>.
  std::vector<Complex> a(8, 0.0);
  a[2] = a[5] = 1 / std::sqrt(2.0);
  StateVector s = StateVector::from_amplitudes(a);
  s = apply_two_level_rotation(s, 2, 5, -std::atan2(1.0, 1.0));
  EXPECT_NEAR(std::abs(s[2]), 1.0, 1e-12);
  EXPECT_LT(std::abs(s[5]), 1e-12);
}

TEST(Kernels, SerialAndParallelAgree) {
  std::mt19937_64 rng(3);
  const StateVector in = testing::random_state(rng, 15);
  std::vector<Complex> a(in.amplitudes().begin(), in.amplitudes().end());
  std::vector<Complex> b = a;
  const Mat2 m = y_matrix(0.3);
  const kernels::ControlMask c = kernels::make_control_mask({{4, Polarity::kOne}, {9, Polarity::kZero}});
  kernels::serial::apply_matrix2(a, 7, m, c);
  kernels::parallel::apply_matrix2(b, 7, m, c);
  kernels::serial::apply_two_level(a, 0b1011, 0b0001, 0b1010, 0.7, {});
  kernels::parallel::apply_two_level(b, 0b1011, 0b0001, 0b1010, 0.7, {});
  kernels::serial::apply_swap(a, 2, 13, c);
  kernels::parallel::apply_swap(b, 2, 13, c);
  EXPECT_EQ(a, b);
  EXPECT_EQ(kernels::serial::norm_squared(a), kernels::parallel::norm_squared(b));
  EXPECT_EQ(kernels::serial::masked_probability(a, 0xF0, 0x30), kernels::parallel::masked_probability(b, 0xF0, 0x30));
}

TEST(Simulator, NormIsPreserved) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const Circuit c = testing::random_circuit(rng, 8, 40, 3);
    EXPECT_NEAR(simulate(c).norm_squared(), 1.0, 1e-10);
  }
}

TEST(Simulator, ProjectionRenormalises) {
  StateVector s = apply_gate(StateVector(2), gates::y(0, 0.25));
  const Projection p = project(s, 1, 1);
  EXPECT_NEAR(p.probability, 0.75, 1e-15);
  EXPECT_NEAR(std::abs(p.state[1]), 1.0, 1e-15);
  try {
    project(StateVector(2), 2, 2);
    FAIL() << "expected a zero-probability error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kZeroProbability);
  }
}

TEST(Simulator, SamplingIsSeededAndUnbiased) {
  const StateVector s = apply_gate(StateVector(1), gates::y(0, 0.3));
  Rng r1(9);
  Rng r2(9);
  const auto a = sample_outcomes(s, {0}, 20000, r1);
  const auto b = sample_outcomes(s, {0}, 20000, r2);
  EXPECT_EQ(a, b);
  const double zeros = static_cast<double>(std::count(a.begin(), a.end(), 0u));
  const double sigma = std::sqrt(20000 * 0.3 * 0.7);
  EXPECT_LT(std::abs(zeros - 6000), 5 * sigma);
}

TEST(Simulator, MarginalDistributionSumsToOne) {
  std::mt19937_64 rng(5);
  const StateVector s = testing::random_state(rng, 6);
  const auto p = marginal_distribution(s, {4, 1});
  ASSERT_EQ(p.size(), 4u);
  double total = 0.0;
  for (double x : p) total += x;
  EXPECT_NEAR(total, 1.0, 1e-12);
  double direct = 0.0;
  for (std::size_t i = 0; i < s.dim(); ++i) {
    if (((i >> 4) & 1) == 1 && ((i >> 1) & 1) == 0) direct += std::norm(s[i]);
  }
  EXPECT_NEAR(p[1], direct, 1e-12);
}

TEST(Simulator, ExtractsProductFactor) {
  StateVector s = apply_gate(StateVector(3), gates::y(1, 0.2));
  s = apply_gate(s, gates::x(2));
  const StateVector sub = extract_subsystem(s, {1});
  EXPECT_NEAR(std::norm(sub[0]), 0.2, 1e-12);
  StateVector bell = apply_gate(StateVector(2), gates::h(0));
  bell = apply_gate(bell, gates::x(1).ctrl(0));
  EXPECT_THROW(extract_subsystem(bell, {0}), Error);
}

TEST(Simulator, DistanceUpToPhase) {
  std::mt19937_64 rng(6);
  const StateVector s = testing::random_state(rng, 3);
  std::vector<Complex> r(s.amplitudes().begin(), s.amplitudes().end());
  for (Complex& x : r) x *= std::polar(1.0, 0.7);
  EXPECT_LT(distance_up_to_phase(s, StateVector::from_amplitudes(r)), 1e-12);
  EXPECT_TRUE(equal_up_to_phase(s, StateVector::from_amplitudes(r)));
}

TEST(Entanglement, BellStateHasOneEbit) {
  StateVector bell = apply_gate(StateVector(2), gates::h(0));
  bell = apply_gate(bell, gates::x(1).ctrl(0));
  const EntanglementReport r = schmidt(bell, {0});
  EXPECT_EQ(r.schmidt_rank, 2);
  EXPECT_NEAR(r.entropy_bits, 1.0, 1e-12);
  EXPECT_NEAR(r.purity, 0.5, 1e-12);
  EXPECT_NEAR(subsystem_purity(bell, {1}), 0.5, 1e-12);
}

TEST(Entanglement, ProductStateHasRankOne) {
  StateVector s = apply_gate(StateVector(3), gates::h(0));
  s = apply_gate(s, gates::y(2, 0.3));
  const EntanglementReport r = schmidt(s, {0, 1});
  EXPECT_EQ(r.schmidt_rank, 1);
  EXPECT_NEAR(r.entropy_bits, 0.0, 1e-12);
  EXPECT_NEAR(subsystem_purity(s, {2}), 1.0, 1e-12);
}

TEST(Entanglement, EntropyMatchesDirectFormula) {
  // cos(t)|00> + sin(t)|11> has entropy H(cos^2 t).
  const double t = 0.4;
  std::vector<Complex> a(4, 0.0);
  a[0] = std::cos(t);
  a[3] = std::sin(t);
  const double p = std::cos(t) * std::cos(t);
  const double h = -p * std::log2(p) - (1 - p) * std::log2(1 - p);
  EXPECT_NEAR(schmidt(StateVector::from_amplitudes(a), {1}).entropy_bits, h, 1e-12);
}

TEST(Bits, ScatterGatherRoundTrip) {
  const std::vector<int> q{5, 1, 3};
  for (BasisIndex v = 0; v < 8; ++v) EXPECT_EQ(gather_bits(scatter_bits(v, q), q), v);
  EXPECT_EQ(scatter_bits(0b001, q), BasisIndex{1} << 5);
  EXPECT_EQ(to_bitstring(5, 4), "0101");
  EXPECT_EQ(parse_bitstring("0101"), 5u);
  EXPECT_THROW(parse_bitstring("012"), Error);
  EXPECT_EQ(ceil_log2(1), 0);
  EXPECT_EQ(ceil_log2(22), 5);
  EXPECT_EQ(ceil_log2(32), 5);
}

}  // namespace
}  // namespace qdb
