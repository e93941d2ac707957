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

#include "qdb/circuit_text.hpp"
#include "qdb/decompose.hpp"
#include "qdb/dump.hpp"
#include "qdb/simulator.hpp"
#include "test_util.hpp"

namespace qdb {
namespace {

Circuit mcx(int tau, bool mixed = false) {
  Circuit c(tau + 1);
  GateSpec g = gates::x(tau);
  for (int q = 0; q < tau; ++q) {
    if (mixed && q % 2 == 1) {
      g.nctrl(q);
    } else {
      g.ctrl(q);
    }
  }
  c.append(g);
  return c;
}

// Max entry difference on the block where the extra qubits are |0> in and out.
double block_error(const Circuit& decomposed, const Circuit& reference) {
  const auto d = oracle::dense_operator(decomposed);
  const auto r = oracle::dense_operator(reference);
  const Eigen::Index dim = r.matrix.rows();
  return (d.matrix.topLeftCorner(dim, dim) - r.matrix).cwiseAbs().maxCoeff();
}

TEST(CircuitText, RoundTripsRandomCircuits) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    Circuit c = testing::random_circuit(rng, 5, 15, 3);
    c.set_label(4, Register::kData);
    c.set_label(3, Register::kAncilla);
    const std::string text = emit_text(c);
    EXPECT_EQ(parse_text(text), c);
    EXPECT_EQ(emit_text(parse_text(text)), text);
  }
}

TEST(CircuitText, EmitsReadableLines) {
  Circuit c(3);
  c.set_label(2, Register::kData);
  c.append(gates::x(2).ctrl(0).nctrl(1));
  c.append(gates::y(0, 0.5));
  c.append(gates::two_level({0, 1}, 0, 3, 0.25));
  EXPECT_EQ(emit_text(c),
            "qubits 3\nlabel q[2] D\nx q[2] ctrl q[0] nctrl q[1]\ny(0.5) q[0]\ntlr(0,3,0.25) q[0] q[1]\n");
}

TEST(CircuitText, ReportsLineNumbers) {
  const auto expect_line = [](const std::string& text, const std::string& where) {
    try {
      parse_text(text);
      FAIL() << "no error for: " << text;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::kParse);
      EXPECT_NE(std::string(e.what()).find(where), std::string::npos) << e.what();
    }
  };
  expect_line("qubits 2\nx q[0]\nfoo q[1]\n", "line 3");
  expect_line("x q[0]\n", "line 1");
  expect_line("qubits 2\n# comment\nry(abc) q[0]\n", "line 3");
  expect_line("qubits 2\nx q[5]\n", "line 2");
  expect_line("qubits 2\nswap q[0]\n", "line 2");
}

TEST(Circuit, InverseGivesIdentity) {
  std::mt19937_64 rng(12);
  const Circuit c = testing::random_circuit(rng, 4, 25, 2);
  Circuit both = c;
  both.append(c.inverse());
  const auto op = oracle::dense_operator(both);
  EXPECT_LT((op.matrix - Eigen::MatrixXcd::Identity(16, 16)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Circuit, EmbedAndAddControls) {
  Circuit sub(2);
  sub.append(gates::h(0));
  sub.append(gates::x(1).ctrl(0));
  const Circuit big = embed(sub, {3, 1}, 4);
  ASSERT_EQ(big.size(), 2u);
  EXPECT_EQ(big.gates()[1], gates::x(1).ctrl(3));
  const Circuit ctl = add_controls(big, {{0, Polarity::kZero}});
  EXPECT_EQ(ctl.gates()[0].controls.size(), 1u);
  EXPECT_EQ(ctl.gates()[1].controls.size(), 2u);
}

TEST(Circuit, Metrics) {
  Circuit c(4);
  c.append(gates::h(0));
  c.append(gates::h(1));
  c.append(gates::x(2).ctrl(0).ctrl(1));
  c.append(gates::x(3).ctrl(2));
  const CircuitMetrics m = metrics(c);
  EXPECT_EQ(m.depth, 3);
  EXPECT_EQ(m.gate_count, 4u);
  EXPECT_EQ(m.mcx_count, 1u);
  EXPECT_EQ(m.max_controls, 2);
}

TEST(Decompose, ChainMatchesMulticontrolledX) {
  for (int tau = 3; tau <= 6; ++tau) {
    for (bool mixed : {false, true}) {
      const Circuit c = mcx(tau, mixed);
      const Circuit d = decompose_mcx(c);
      EXPECT_EQ(d.n_qubits(), tau + 1 + vchain_ancillas(tau));
      EXPECT_LT(block_error(d, c), 1e-9) << "tau " << tau;
      for (const GateSpec& g : d.gates()) EXPECT_LE(g.controls.size(), 2u);
    }
  }
}

TEST(Decompose, ToffoliCountIsLinear) {
  std::vector<std::size_t> counts;
  for (int tau = 3; tau <= 8; ++tau) counts.push_back(metrics(decompose_mcx(mcx(tau))).mcx_count);
  for (std::size_t i = 1; i < counts.size(); ++i) EXPECT_EQ(counts[i] - counts[i - 1], counts[1] - counts[0]);
}

TEST(Decompose, BorrowedAncillasAreReused) {
  Circuit c(6);
  c.set_label(4, Register::kAncilla);
  c.set_label(5, Register::kAncilla);
  GateSpec g = gates::x(3).ctrl(0).ctrl(1).ctrl(2);
  c.append(g);
  const Circuit d = decompose_mcx(c, {.ancilla_policy = AncillaPolicy::kCleanBorrowed});
  EXPECT_EQ(d.n_qubits(), 6);
  // Compare on inputs with the borrowed qubits at |0>.
  for (BasisIndex in = 0; in < 16; ++in) {
    const StateVector a = simulate(d, StateVector::basis(6, in));
    const StateVector b = simulate(c, StateVector::basis(6, in));
    EXPECT_LT(testing::max_diff(a, b), 1e-12);
  }
  Circuit tight(4);
  tight.append(gates::x(3).ctrl(0).ctrl(1).ctrl(2));
  try {
    decompose_mcx(tight, {.ancilla_policy = AncillaPolicy::kCleanBorrowed});
    FAIL() << "expected a capacity error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kCapacity);
  }
}

TEST(Dump, AnnotatesRegisters) {
  const std::vector<Register> labels{Register::kIndex, Register::kIndex, Register::kData, Register::kAncilla};
  EXPECT_EQ(annotate_bits(0b0110, labels), "I=10 D=1 A=0");
}

TEST(Dump, JsonAndCsvRoundTrip) {
  StateVector s = apply_gate(StateVector(3), gates::h(0));
  s = apply_gate(s, gates::phase(0, 0.3));
  const std::vector<Register> labels(3, Register::kIndex);
  const auto records = amplitude_records(s, labels);
  ASSERT_EQ(records.size(), 2u);
  for (DumpFormat f : {DumpFormat::kJson, DumpFormat::kCsv}) {
    EXPECT_EQ(parse_dump(format_dump(records, f), f), records);
  }
  EXPECT_THROW(parse_dump_format("xml"), Error);
}

}  // namespace
}  // namespace qdb
