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

#include "qdb/oracle.hpp"

#include <cmath>

#include <Eigen/SparseCore>

namespace qdb::oracle {
namespace {

using Triplet = Eigen::Triplet<Complex>;
using Sparse = Eigen::SparseMatrix<Complex>;

Eigen::Matrix2cd ry_matrix(double theta) {
  Eigen::Matrix2cd m;
  const double c = std::cos(theta / 2);
  const double s = std::sin(theta / 2);
  m << c, -s, s, c;
  return m;
}

// 2x2 block of a single-target gate, from its definition.
Eigen::Matrix2cd local_matrix(const GateSpec& g) {
  Eigen::Matrix2cd m;
  switch (g.kind) {
    case GateKind::kX:
      m << 0, 1, 1, 0;
      return m;
    case GateKind::kH: {
      const double r = 1 / std::sqrt(2.0);
      m << r, r, r, -r;
      return m;
    }
    case GateKind::kRy:
      return ry_matrix(g.param);
    case GateKind::kY:
    case GateKind::kYtilde: {
      const auto y = [](double p) {
        Eigen::Matrix2cd r;
        r << std::sqrt(p), -std::sqrt(1 - p), std::sqrt(1 - p), std::sqrt(p);
        return r;
      };
      m = y(g.param);
      if (g.kind == GateKind::kYtilde) m = m * y(0.5).inverse();
      return g.adjoint ? Eigen::Matrix2cd(m.adjoint()) : m;
    }
    case GateKind::kPhase:
      m << 1, 0, 0, std::polar(1.0, g.param);
      return m;
    default:
      fail(ErrorKind::kInvalidArgument, "not a single-target gate");
  }
}

Sparse sparse_gate(const GateSpec& g, int n) {
  const BasisIndex dim = BasisIndex{1} << n;
  std::vector<Triplet> entries;
  entries.reserve(dim * 2);
  const auto put = [&](BasisIndex row, BasisIndex col, Complex v) {
    if (v != Complex{}) entries.emplace_back(static_cast<int>(row), static_cast<int>(col), v);
  };
  for (BasisIndex col = 0; col < dim; ++col) {
    bool active = true;
    for (const Control& c : g.controls) {
      const bool set = ((col >> c.qubit) & 1) != 0;
      active = active && (set == (c.polarity == Polarity::kOne));
    }
    if (!active) {
      put(col, col, 1.0);
      continue;
    }
    switch (g.kind) {
      case GateKind::kSwap: {
        const BasisIndex a = (col >> g.targets[0]) & 1;
        const BasisIndex b = (col >> g.targets[1]) & 1;
        BasisIndex row = col & ~(bit(g.targets[0]) | bit(g.targets[1]));
        row |= (a << g.targets[1]) | (b << g.targets[0]);
        put(row, col, 1.0);
        break;
      }
      case GateKind::kTwoLevel: {
        BasisIndex value = 0;
        BasisIndex clear = col;
        for (std::size_t i = 0; i < g.targets.size(); ++i) {
          value |= ((col >> g.targets[i]) & 1) << i;
          clear &= ~bit(g.targets[i]);
        }
        const auto with = [&](BasisIndex v) {
          BasisIndex idx = clear;
          for (std::size_t i = 0; i < g.targets.size(); ++i) idx |= ((v >> i) & 1) << g.targets[i];
          return idx;
        };
        const double c = std::cos(g.param);
        const double s = std::sin(g.param);
        if (value == g.level_a) {
          put(with(g.level_a), col, c);
          put(with(g.level_b), col, s);
        } else if (value == g.level_b) {
          put(with(g.level_a), col, -s);
          put(with(g.level_b), col, c);
        } else {
          put(col, col, 1.0);
        }
        break;
      }
      default: {
        const Eigen::Matrix2cd m = local_matrix(g);
        const int t = g.targets[0];
        const BasisIndex in = (col >> t) & 1;
        const BasisIndex base = col & ~bit(t);
        put(base, col, m(0, static_cast<int>(in)));
        put(base | bit(t), col, m(1, static_cast<int>(in)));
      }
    }
  }
  Sparse s(static_cast<int>(dim), static_cast<int>(dim));
  s.setFromTriplets(entries.begin(), entries.end());
  return s;
}

void check_size(int n) {
  if (n > kMaxDenseQubits) {
    fail(ErrorKind::kCapacity, "dense operators are limited to " + std::to_string(kMaxDenseQubits) + " qubits");
  }
}

Complex ud_amplitude(const std::optional<DenseOperator>& ud, std::uint64_t out, std::uint64_t in) {
  if (!ud) return out == in ? 1.0 : 0.0;
  return ud->matrix(static_cast<Eigen::Index>(out), static_cast<Eigen::Index>(in));
}

}  // namespace

bool DenseOperator::is_unitary(double tolerance) const {
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(matrix.rows(), matrix.cols());
  return ((matrix.adjoint() * matrix) - id).cwiseAbs().maxCoeff() <= tolerance;
}

StateVector DenseOperator::apply(const StateVector& state) const {
  if (state.dim() != dim()) fail(ErrorKind::kInvalidArgument, "operator and state sizes differ");
  Eigen::VectorXcd v(static_cast<Eigen::Index>(dim()));
  for (std::size_t i = 0; i < dim(); ++i) v(static_cast<Eigen::Index>(i)) = state[i];
  const Eigen::VectorXcd r = matrix * v;
  return StateVector::from_amplitudes(std::vector<Complex>(r.data(), r.data() + r.size()), 1e-8);
}

DenseOperator dense_gate(const GateSpec& gate, int n_qubits) {
  check_size(n_qubits);
  validate(gate, n_qubits);
  return {n_qubits, Eigen::MatrixXcd(sparse_gate(gate, n_qubits))};
}

DenseOperator dense_operator(const Circuit& circuit) {
  const int n = circuit.n_qubits();
  check_size(n);
  const Eigen::Index dim = Eigen::Index{1} << n;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(dim, dim);
  for (const GateSpec& g : circuit.gates()) {
    validate(g, n);
    m = sparse_gate(g, n) * m;
  }
  return {n, std::move(m)};
}

double operator_distance_up_to_phase(const DenseOperator& a, const DenseOperator& b) {
  if (a.dim() != b.dim()) return std::numeric_limits<double>::infinity();
  const Complex t = (b.matrix.adjoint() * a.matrix).trace();
  const Complex phase = std::abs(t) > 0 ? t / std::abs(t) : Complex{1.0};
  return (a.matrix - phase * b.matrix).cwiseAbs().maxCoeff();
}

std::map<BasisIndex, Complex> expected_qdb_amplitudes(const QdbDescriptor& d, const QdbLayout& layout,
                                                      std::optional<std::uint64_t> sensor_value,
                                                      const std::set<int>& copied) {
  validate(d);
  const bool has_sensor = !layout.sensor_qubits.empty();
  if (has_sensor && !sensor_value) {
    fail(ErrorKind::kSemantic, "the sensor is entangled with the database");
  }
  std::optional<DenseOperator> ud;
  if (d.u_d) ud = dense_operator(*d.u_d);
  const std::uint64_t dvals = std::uint64_t{1} << d.data_width;

  // Sensor factor, shared by every branch.
  std::vector<std::pair<BasisIndex, Complex>> sensor{{0, 1.0}};
  if (has_sensor) {
    sensor.clear();
    for (std::uint64_t v = 0; v < dvals; ++v) {
      const Complex a = ud_amplitude(ud, v, *sensor_value);
      if (a != Complex{}) sensor.emplace_back(scatter_bits(v, layout.sensor_qubits), a);
    }
  }

  std::map<BasisIndex, Complex> out;
  for (int j = 0; j < d.k; ++j) {
    const double p = d.probability(j);
    if (p <= 0.0) continue;
    const BasisIndex idx = scatter_bits(layout.physical_index(j), layout.index_qubits);
    const std::uint64_t dj = d.value(j);
    const bool copy = copied.contains(j) && !layout.copy_qubits.empty();
    for (std::uint64_t v = 0; v < dvals; ++v) {
      const Complex a = ud_amplitude(ud, v, dj);
      if (a == Complex{}) continue;
      const BasisIndex base = idx | scatter_bits(v, layout.data_qubits);
      for (std::uint64_t cv = 0; cv < (copy ? dvals : 1); ++cv) {
        const Complex ca = copy ? ud_amplitude(ud, cv, dj) : Complex{1.0};
        if (ca == Complex{}) continue;
        const BasisIndex with_copy = base | scatter_bits(cv, layout.copy_qubits);
        for (const auto& [sb, sa] : sensor) out[with_copy | sb] += std::sqrt(p) * a * ca * sa;
      }
    }
  }
  return out;
}

std::map<BasisIndex, Complex> expected_qdb_amplitudes(const QdbDescriptor& d) {
  return expected_qdb_amplitudes(d, default_layout(d.k, d.data_width), 0, {});
}

std::map<BasisIndex, Complex> expected_qdb_amplitudes(const QdbState& q) {
  if (q.consumed) fail(ErrorKind::kSemantic, "the database was consumed by a projective read");
  return expected_qdb_amplitudes(q.descriptor, q.layout, q.sensor_value, q.copied);
}

double amplitude_error(const std::map<BasisIndex, Complex>& expected, const StateVector& actual) {
  // Align the global phase on the largest expected amplitude.
  Complex phase{1.0};
  double largest = 0.0;
  for (const auto& [i, a] : expected) {
    if (i < actual.dim() && std::abs(a) > largest && std::abs(actual[i]) > 0) {
      largest = std::abs(a);
      const Complex r = a / actual[i];
      phase = r / std::abs(r);
    }
  }
  double err = 0.0;
  for (std::size_t i = 0; i < actual.dim(); ++i) {
    const auto it = expected.find(i);
    const Complex e = it == expected.end() ? Complex{} : it->second;
    err = std::max(err, std::abs(e - phase * actual[i]));
  }
  for (const auto& [i, a] : expected) {
    if (i >= actual.dim()) err = std::max(err, std::abs(a));
  }
  return err;
}

DenseOperator permutation_matrix(const Permutation& pi, int data_width) {
  const int kt = ceil_log2(static_cast<std::uint64_t>(pi.size()));
  const int n = kt + data_width;
  check_size(n);
  const Eigen::Index dim = Eigen::Index{1} << n;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    const Eigen::Index j = col & ((Eigen::Index{1} << kt) - 1);
    const Eigen::Index rest = col - j;
    const Eigen::Index target = j < pi.size() ? pi(static_cast<int>(j)) : j;
    m(rest + target, col) = 1.0;
  }
  return {n, std::move(m)};
}

double data_overlap_sum(const QdbDescriptor& db1, const QdbDescriptor& db2) {
  if (db1.k != db2.k) fail(ErrorKind::kInvalidArgument, "databases differ in size");
  double s = 0.0;
  for (int j = 1; j < db1.k; ++j) s += db1.value(j) == db2.value(j) ? 1.0 : 0.0;
  return s;
}

std::pair<double, double> overlap_lemma_sides(const QdbDescriptor& db1, const QdbDescriptor& db2, int l) {
  const double s = data_overlap_sum(db1, db2);
  const double k = db1.k;
  return {(1 + s) / k, (1 + l + s) / (k + l)};
}

}  // namespace qdb::oracle
