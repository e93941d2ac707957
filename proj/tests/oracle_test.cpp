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

#include "test_util.hpp"

namespace qdb {
namespace {

using oracle::dense_gate;
using oracle::dense_operator;

Eigen::MatrixXcd mat(std::initializer_list<std::initializer_list<Complex>> rows) {
  Eigen::MatrixXcd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index r = 0;
  for (const auto& row : rows) {
    Eigen::Index c = 0;
    for (const Complex& v : row) m(r, c++) = v;
    ++r;
  }
  return m;
}

double diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) { return (a - b).cwiseAbs().maxCoeff(); }

TEST(DenseOracle, KnownTwoQubitMatrices) {
  // Basis order |q1 q0>: index = 2 q1 + q0.
  const auto cnot = mat({{1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}, {0, 1, 0, 0}});
  EXPECT_LT(diff(dense_gate(gates::x(1).ctrl(0), 2).matrix, cnot), 1e-15);
  const auto ncnot = mat({{0, 0, 1, 0}, {0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 1}});
  EXPECT_LT(diff(dense_gate(gates::x(1).nctrl(0), 2).matrix, ncnot), 1e-15);
  const auto swap = mat({{1, 0, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}});
  EXPECT_LT(diff(dense_gate(gates::swap(0, 1), 2).matrix, swap), 1e-15);
}

TEST(DenseOracle, YGates) {
  const double p = 0.3;
  const double a = std::sqrt(p);
  const double b = std::sqrt(1 - p);
  EXPECT_LT(diff(dense_gate(gates::y(0, p), 1).matrix, mat({{a, -b}, {b, a}})), 1e-15);
  // Y(p) Y(1/2)^-1 with Y(1/2)^-1 = [[r, r], [-r, r]], r = 1/sqrt 2.
  const double r = 1 / std::sqrt(2.0);
  const auto yt = mat({{a * r + b * r, a * r - b * r}, {b * r - a * r, b * r + a * r}});
  EXPECT_LT(diff(dense_gate(gates::ytilde(0, p), 1).matrix, yt), 1e-15);
  EXPECT_LT(diff(dense_gate(inverse(gates::ytilde(0, p)), 1).matrix, yt.adjoint()), 1e-15);
}

TEST(DenseOracle, TwoLevelRotation) {
  const double t = 0.4;
  const double c = std::cos(t);
  const double s = std::sin(t);
  // Plane {|1>, |2>} of a two-qubit register.
  const auto want = mat({{1, 0, 0, 0}, {0, c, -s, 0}, {0, s, c, 0}, {0, 0, 0, 1}});
  EXPECT_LT(diff(dense_gate(gates::two_level({0, 1}, 1, 2, t), 2).matrix, want), 1e-15);
}

TEST(DenseOracle, RandomCircuitsAreUnitary) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    EXPECT_TRUE(dense_operator(testing::random_circuit(rng, 5, 20, 3)).is_unitary(1e-12));
  }
}

TEST(DenseOracle, CapAtTwelveQubits) {
  EXPECT_THROW(dense_operator(Circuit(13)), Error);
}

TEST(DenseOracle, PhaseAlignedDistance) {
  Circuit a(1);
  a.append(gates::h(0));
  const auto u = dense_operator(a);
  oracle::DenseOperator v = u;
  v.matrix *= std::polar(1.0, 1.1);
  EXPECT_LT(oracle::operator_distance_up_to_phase(u, v), 1e-14);
}

TEST(ExpectedAmplitudes, ClosedFormDatabase) {
  const QdbDescriptor d{.k = 3, .l = 1, .data_width = 2, .data = {{2, 3}}};
  const auto amps = oracle::expected_qdb_amplitudes(d);
  // Index qubits 0-1, data qubits 2-3.
  ASSERT_EQ(amps.size(), 3u);
  EXPECT_NEAR(amps.at(0).real(), std::sqrt(0.5), 1e-15);
  EXPECT_NEAR(amps.at(1).real(), 0.5, 1e-15);
  EXPECT_NEAR(amps.at(2 | (3 << 2)).real(), 0.5, 1e-15);
}

TEST(ExpectedAmplitudes, EntangledSensorIsRejected) {
  QdbLayout layout = default_layout(2, 1);
  layout.sensor_qubits = {2};
  EXPECT_THROW(oracle::expected_qdb_amplitudes({.k = 2}, layout, std::nullopt), Error);
}

TEST(PermutationMatrix, MapsIndices) {
  const Permutation pi({2, 0, 1});
  const auto m = oracle::permutation_matrix(pi, 1);
  EXPECT_EQ(m.n_qubits, 3);
  EXPECT_EQ(m.matrix(2, 0), Complex(1.0));
  EXPECT_EQ(m.matrix(0, 1), Complex(1.0));
  EXPECT_EQ(m.matrix(1 | 4, 2 | 4), Complex(1.0));
  EXPECT_EQ(m.matrix(3, 3), Complex(1.0));
  EXPECT_TRUE(m.is_unitary());
}

TEST(OverlapLemma, Sides) {
  const QdbDescriptor a{.k = 3, .data = {{1, 1}}};
  const QdbDescriptor b{.k = 3, .data = {{2, 1}}};
  EXPECT_EQ(oracle::data_overlap_sum(a, b), 0.0);
  const auto [before, after] = oracle::overlap_lemma_sides(a, b, 2);
  EXPECT_DOUBLE_EQ(before, 1.0 / 3);
  EXPECT_DOUBLE_EQ(after, 3.0 / 5);
}

}  // namespace
}  // namespace qdb
