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

#include "qdb/ops.hpp"

#include <cmath>
#include <numbers>

#include "qdb/simulator.hpp"

namespace qdb {
namespace {

[[noreturn]] void semantic(const std::string& op, const std::string& why) {
  fail(ErrorKind::kSemantic, op + ": " + why);
}

void check_usable(const QdbState& q, const std::string& op) {
  if (q.consumed) semantic(op, "the database was consumed by a projective read");
}

void check_in_range(const QdbState& q, int f, const std::string& op) {
  if (f < 0 || f >= q.descriptor.k) {
    semantic(op, "entry " + std::to_string(f) + " outside [0, " + std::to_string(q.descriptor.k) + ")");
  }
}

void check_live(const QdbState& q, int f, const std::string& op) {
  check_in_range(q, f, op);
  if (q.descriptor.removed.contains(f) || q.descriptor.probability(f) <= 0.0) {
    semantic(op, "entry " + std::to_string(f) + " is not occupied");
  }
}

void check_value_fits(const QdbState& q, std::uint64_t d, const std::string& op) {
  if (q.descriptor.data_width < 64 && d >= (std::uint64_t{1} << q.descriptor.data_width)) {
    semantic(op, "value wider than the " + std::to_string(q.descriptor.data_width) + "-bit data register");
  }
}

void check_write_target(const QdbState& q, int f, std::uint64_t d, const std::string& op) {
  check_usable(q, op);
  if (f == 0) semantic(op, "entry 0 is the reservoir");
  check_live(q, f, op);
  if (q.descriptor.value(f) != 0) semantic(op, "entry " + std::to_string(f) + " is not empty");
  check_value_fits(q, d, op);
  if (!q.sensor_value) semantic(op, "the sensor is entangled with the database");
}

std::vector<Control> index_controls(const QdbLayout& layout, BasisIndex phys) {
  std::vector<Control> out;
  for (std::size_t i = 0; i < layout.index_qubits.size(); ++i) {
    out.push_back({layout.index_qubits[i], ((phys >> i) & 1U) ? Polarity::kOne : Polarity::kZero});
  }
  return out;
}

void append_ud(Circuit& c, const QdbDescriptor& d, const std::vector<int>& reg, bool adjoint) {
  if (!d.u_d || reg.empty()) return;
  const Circuit u = adjoint ? d.u_d->inverse() : *d.u_d;
  c.append(embed(u, reg, c.n_qubits()));
}

void append_flips(Circuit& c, const std::vector<int>& reg, std::uint64_t bits) {
  for (std::size_t i = 0; i < reg.size(); ++i) {
    if ((bits >> i) & 1U) c.append(gates::x(reg[i]));
  }
}

void relabel(Circuit& c, const QdbLayout& layout) {
  const std::vector<Register> labels = layout.labels();
  for (int q = 0; q < c.n_qubits(); ++q) c.set_label(q, labels[static_cast<std::size_t>(q)]);
}

void ensure_sensor(QdbState& q) {
  if (q.layout.sensor_qubits.empty() && q.descriptor.data_width > 0) {
    allocate_qubits(q, &QdbLayout::sensor_qubits, q.descriptor.data_width);
  }
}

// Gates taking the sensor from u_d|from> to the computational state |to>.
void sensor_to_basis(Circuit& c, const QdbState& q, std::uint64_t from, std::uint64_t to) {
  if (from != 0) append_ud(c, q.descriptor, q.layout.sensor_qubits, true);
  append_flips(c, q.layout.sensor_qubits, from ^ to);
}

QdbState fresh_state(QdbDescriptor descriptor) {
  QdbState q{.descriptor = std::move(descriptor), .state = StateVector(0), .last_circuit = Circuit(0)};
  q.layout = default_layout(q.descriptor.k, q.descriptor.data_width);
  q.state = StateVector(q.layout.n_qubits());
  q.preparation = q.empty_circuit();
  q.last_circuit = q.empty_circuit();
  return q;
}

}  // namespace

Circuit prepare_circuit(int k, int l, const std::vector<int>& qubits, int n_qubits) {
  if (k < 1) fail(ErrorKind::kInvalidArgument, "prepare needs k >= 1");
  if (l < 0) fail(ErrorKind::kInvalidArgument, "prepare needs l >= 0");
  const int t = ceil_log2(static_cast<std::uint64_t>(k));
  if (static_cast<int>(qubits.size()) < t) fail(ErrorKind::kInvalidArgument, "too few qubits for k");
  Circuit c(n_qubits);
  if (k == 1) return c;

  const auto q = [&](int j) { return qubits[static_cast<std::size_t>(j)]; };
  const std::uint64_t s = static_cast<std::uint64_t>(k) - 1;
  const double kl = k + l;
  c.append(gates::y(q(t - 1), (std::ldexp(1.0, t - 1) + l) / kl));

  for (int j = t - 2; j >= 0; --j) {
    std::vector<Control> on_s;
    std::vector<Control> on_zero;
    for (int i = t - 1; i > j; --i) {
      on_s.push_back({q(i), ((s >> i) & 1U) ? Polarity::kOne : Polarity::kZero});
      on_zero.push_back({q(i), Polarity::kZero});
    }
    c.append(gates::y(q(j), 0.5));
    if (((s >> j) & 1U) == 0) {
      // Every value left in this branch has bit j clear.
      c.append(inverse(gates::y(q(j), 0.5)).with_controls(on_s));
    } else {
      const std::uint64_t count = (s & ((std::uint64_t{2} << j) - 1)) + 1;
      if (count != (std::uint64_t{2} << j)) {
        c.append(gates::ytilde(q(j), std::ldexp(1.0, j) / static_cast<double>(count)).with_controls(on_s));
      }
    }
    if (l != 0) {
      const double p = (std::ldexp(1.0, j) + l) / (std::ldexp(1.0, j + 1) + l);
      c.append(gates::ytilde(q(j), p).with_controls(on_zero));
    }
  }
  return c;
}

Circuit prepare_circuit(int k, int l) {
  const int t = ceil_log2(static_cast<std::uint64_t>(std::max(k, 1)));
  std::vector<int> qubits(static_cast<std::size_t>(t));
  for (int i = 0; i < t; ++i) qubits[static_cast<std::size_t>(i)] = i;
  return prepare_circuit(k, l, qubits, t);
}

QdbState prepare_balanced(int k, int data_width) {
  if (k < 1 || !is_power_of_two(static_cast<std::uint64_t>(k))) {
    fail(ErrorKind::kInvalidArgument, "prepare_balanced needs a power-of-two k, got " + std::to_string(k));
  }
  QdbState q = fresh_state({.k = k, .l = 0, .data_width = data_width});
  Circuit c = q.empty_circuit();
  for (int qb : q.layout.index_qubits) c.append(gates::h(qb));
  apply_recorded(q, c);
  return q;
}

QdbState prepare_general(int k, int l, int data_width) {
  if (k < 1) fail(ErrorKind::kInvalidArgument, "prepare_general needs k >= 1");
  if (l < 0) fail(ErrorKind::kInvalidArgument, "prepare_general needs l >= 0");
  if (data_width < 0) fail(ErrorKind::kInvalidArgument, "negative data width");
  QdbState q = fresh_state({.k = k, .l = l, .data_width = data_width});
  Circuit c = q.empty_circuit();
  c.append(prepare_circuit(k, l, q.layout.index_qubits, c.n_qubits()));
  apply_recorded(q, c);
  return q;
}

void check_data_transform(const Circuit& u_d, int data_width) {
  if (u_d.n_qubits() != data_width) semantic("u_d", "width differs from the data register");
  const StateVector out = simulate(u_d);
  if (std::abs(out[0] - Complex{1.0}) > 1e-9) semantic("u_d", "must map |0...0> to itself");
}

QdbState build(const QdbDescriptor& descriptor) {
  validate(descriptor);
  if (!descriptor.removed.empty() || descriptor.weights) {
    semantic("build", "only reservoir-pattern descriptors without removed entries can be built");
  }
  if (descriptor.value(0) != 0) semantic("build", "entry 0 is the reservoir and must be empty");
  if (descriptor.u_d) check_data_transform(*descriptor.u_d, descriptor.data_width);
  QdbState q = prepare_general(descriptor.k, descriptor.l, descriptor.data_width);
  q.descriptor.u_d = descriptor.u_d;
  for (const auto& [j, v] : descriptor.data) {
    if (v != 0) q = write(std::move(q), j, v);
  }
  q = release_sensor(std::move(q));
  q.last_circuit = *q.preparation;
  return q;
}

QdbState write(QdbState q, int f, std::uint64_t d) {
  check_write_target(q, f, d, "write");
  if (d == 0) {
    q.last_circuit = q.empty_circuit();
    return q;
  }
  ensure_sensor(q);
  const QdbLayout& L = q.layout;
  Circuit c = q.empty_circuit();
  sensor_to_basis(c, q, *q.sensor_value, d);
  append_ud(c, q.descriptor, L.sensor_qubits, false);

  append_ud(c, q.descriptor, L.data_qubits, true);
  append_ud(c, q.descriptor, L.sensor_qubits, true);
  const std::vector<Control> on_f = index_controls(L, L.physical_index(f));
  for (std::size_t i = 0; i < L.data_qubits.size(); ++i) {
    c.append(gates::x(L.data_qubits[i]).with_controls(on_f).ctrl(L.sensor_qubits[i]));
  }
  append_ud(c, q.descriptor, L.data_qubits, false);
  append_ud(c, q.descriptor, L.sensor_qubits, false);

  apply_recorded(q, c);
  q.descriptor.data[f] = d;
  q.sensor_value = d;
  q.copied.erase(f);
  return q;
}

QdbState write_swap_conditional(QdbState q, int f, std::uint64_t d) {
  check_write_target(q, f, d, "write");
  ensure_sensor(q);
  const QdbLayout& L = q.layout;
  Circuit c = q.empty_circuit();
  sensor_to_basis(c, q, *q.sensor_value, d);
  append_ud(c, q.descriptor, L.sensor_qubits, false);
  const std::vector<Control> on_f = index_controls(L, L.physical_index(f));
  for (std::size_t i = 0; i < L.data_qubits.size(); ++i) {
    c.append(gates::swap(L.data_qubits[i], L.sensor_qubits[i]).with_controls(on_f));
  }
  apply_recorded(q, c);
  if (d != 0) {
    q.descriptor.data[f] = d;
    q.sensor_value.reset();
  } else {
    q.sensor_value = 0;
  }
  q.copied.erase(f);
  return q;
}

QdbState release_sensor(QdbState q) {
  if (!q.sensor_value) semantic("release-sensor", "the sensor is entangled with the database");
  Circuit c = q.empty_circuit();
  if (*q.sensor_value != 0) sensor_to_basis(c, q, *q.sensor_value, 0);
  apply_recorded(q, c);
  q.sensor_value = 0;
  return q;
}

namespace {

void ensure_copy_register(QdbState& q) {
  if (q.layout.copy_qubits.empty() && q.descriptor.data_width > 0) {
    allocate_qubits(q, &QdbLayout::copy_qubits, q.descriptor.data_width);
  }
}

}  // namespace

QdbState read_copy(QdbState q, int f) {
  check_usable(q, "read-copy");
  check_live(q, f, "read-copy");
  ensure_copy_register(q);
  const QdbLayout& L = q.layout;
  Circuit c = q.empty_circuit();
  append_ud(c, q.descriptor, L.data_qubits, true);
  append_ud(c, q.descriptor, L.copy_qubits, true);
  const std::vector<Control> on_f = index_controls(L, L.physical_index(f));
  for (std::size_t i = 0; i < L.data_qubits.size(); ++i) {
    c.append(gates::x(L.copy_qubits[i]).with_controls(on_f).ctrl(L.data_qubits[i]));
  }
  append_ud(c, q.descriptor, L.data_qubits, false);
  append_ud(c, q.descriptor, L.copy_qubits, false);
  apply_recorded(q, c);
  if (!q.copied.erase(f)) q.copied.insert(f);
  return q;
}

QdbState read_copy_all(QdbState q) {
  check_usable(q, "read-copy");
  ensure_copy_register(q);
  const QdbLayout& L = q.layout;
  Circuit c = q.empty_circuit();
  append_ud(c, q.descriptor, L.data_qubits, true);
  append_ud(c, q.descriptor, L.copy_qubits, true);
  for (std::size_t i = 0; i < L.data_qubits.size(); ++i) {
    c.append(gates::x(L.copy_qubits[i]).ctrl(L.data_qubits[i]));
  }
  append_ud(c, q.descriptor, L.data_qubits, false);
  append_ud(c, q.descriptor, L.copy_qubits, false);
  apply_recorded(q, c);
  for (int j = 0; j < q.descriptor.k; ++j) {
    if (q.descriptor.removed.contains(j)) continue;
    if (!q.copied.erase(j)) q.copied.insert(j);
  }
  return q;
}

ReadoutResult read_projective(const QdbState& q, int f) {
  check_usable(q, "read-projective");
  check_in_range(q, f, "read-projective");
  const BasisIndex value = scatter_bits(q.layout.physical_index(f), q.layout.index_qubits);
  Projection proj = project(q.state, q.layout.index_mask(), value);
  QdbState collapsed = q;
  collapsed.state = proj.state;
  std::vector<double> w(static_cast<std::size_t>(q.descriptor.k), 0.0);
  w[static_cast<std::size_t>(f)] = 1.0;
  collapsed.descriptor.weights = std::move(w);
  collapsed.preparation.reset();
  collapsed.last_circuit = collapsed.empty_circuit();
  collapsed.consumed = true;
  StateVector data = extract_subsystem(proj.state, q.layout.data_qubits);
  return {std::move(data), proj.probability, std::move(collapsed)};
}

std::vector<double> read_probabilities(const QdbState& q) {
  std::vector<double> p(static_cast<std::size_t>(q.descriptor.k));
  const BasisIndex mask = q.layout.index_mask();
  for (int j = 0; j < q.descriptor.k; ++j) {
    p[static_cast<std::size_t>(j)] =
        probability(q.state, mask, scatter_bits(q.layout.physical_index(j), q.layout.index_qubits));
  }
  return p;
}

QdbState remove_reservoir(QdbState q, int f) {
  const std::string op = "remove";
  check_usable(q, op);
  if (f == 0) semantic(op, "entry 0 is the reservoir");
  check_live(q, f, op);
  if (q.copied.contains(f)) semantic(op, "entry " + std::to_string(f) + " has been copied out");
  if (q.descriptor.removed.contains(0) || q.descriptor.value(0) != 0) {
    semantic(op, "entry 0 must be an empty reservoir");
  }
  if (!q.sensor_value) semantic(op, "the sensor is entangled with the database");

  const std::uint64_t d = q.descriptor.value(f);
  if (d != 0) ensure_sensor(q);
  const QdbLayout& L = q.layout;
  Circuit c = q.empty_circuit();
  if (*q.sensor_value != 0) sensor_to_basis(c, q, *q.sensor_value, 0);
  if (d != 0) {
    // Reset the data of branch f with a sensor copy of its label.
    append_flips(c, L.sensor_qubits, d);
    append_ud(c, q.descriptor, L.data_qubits, true);
    const std::vector<Control> on_f = index_controls(L, L.physical_index(f));
    for (std::size_t i = 0; i < L.data_qubits.size(); ++i) {
      c.append(gates::x(L.data_qubits[i]).with_controls(on_f).ctrl(L.sensor_qubits[i]));
    }
    append_ud(c, q.descriptor, L.data_qubits, false);
    append_flips(c, L.sensor_qubits, d);
  }
  const StateVector trial = simulate(c, q.state);

  const BasisIndex phys0 = L.physical_index(0);
  const BasisIndex physf = L.physical_index(f);
  const BasisIndex a = L.basis_index(phys0, 0);
  const BasisIndex b = L.basis_index(physf, 0);
  const Complex alpha = trial[a];
  const Complex beta = trial[b];
  const double pf = probability(trial, L.index_mask(), scatter_bits(physf, L.index_qubits));
  if (std::norm(beta) < pf - 1e-9) {
    semantic(op, "branch " + std::to_string(f) + " is not in a single basis state after the reset");
  }

  if (std::abs(alpha) > 0.0 && std::abs(beta) > 0.0) {
    const double dphi = std::arg(alpha) - std::arg(beta);
    if (std::abs(std::remainder(dphi, 2 * std::numbers::pi)) > 1e-15) {
      // Align the phase of |f>|0> with the reservoir before rotating.
      std::size_t pivot = 0;
      while (((physf >> pivot) & 1U) == 0) ++pivot;
      GateSpec g = gates::phase(L.index_qubits[pivot], dphi);
      for (std::size_t i = 0; i < L.index_qubits.size(); ++i) {
        if (i == pivot) continue;
        if ((physf >> i) & 1U) {
          g.ctrl(L.index_qubits[i]);
        } else {
          g.nctrl(L.index_qubits[i]);
        }
      }
      for (int qd : L.data_qubits) g.nctrl(qd);
      c.append(g);
    }
  }
  std::vector<int> targets = L.index_qubits;
  targets.insert(targets.end(), L.data_qubits.begin(), L.data_qubits.end());
  c.append(gates::two_level(targets, phys0, physf, -std::atan2(std::abs(beta), std::abs(alpha))));

  apply_recorded(q, c);
  QdbDescriptor& desc = q.descriptor;
  if (desc.weights) {
    auto& w = *desc.weights;
    w[0] += w[static_cast<std::size_t>(f)];
    w[static_cast<std::size_t>(f)] = 0.0;
  } else {
    desc.l += 1;
  }
  desc.removed.insert(f);
  desc.data.erase(f);
  q.sensor_value = 0;
  return q;
}

RemovalOutcome remove_projective(const QdbState& q, int f) {
  const std::string op = "remove";
  check_usable(q, op);
  check_live(q, f, op);
  const BasisIndex mask = q.layout.index_mask();
  const BasisIndex value = scatter_bits(q.layout.physical_index(f), q.layout.index_qubits);
  const double pf = probability(q.state, mask, value);

  RemovalOutcome out;
  out.success_probability = std::max(0.0, 1.0 - pf);
  if (out.success_probability > tol::kZeroProbability) {
    Projection proj = project(q.state, [&](BasisIndex i) { return (i & mask) != value; });
    QdbState s = q;
    s.state = std::move(proj.state);
    s.descriptor.removed.insert(f);
    s.descriptor.data.erase(f);
    if (s.descriptor.weights) {
      auto& w = *s.descriptor.weights;
      const double rest = 1.0 - w[static_cast<std::size_t>(f)];
      w[static_cast<std::size_t>(f)] = 0.0;
      for (double& x : w) x /= rest;
    } else if (f == 0) {
      s.descriptor.l = 0;
    }
    s.copied.erase(f);
    s.preparation.reset();
    s.last_circuit = s.empty_circuit();
    out.on_success = std::move(s);
  }
  if (pf > tol::kZeroProbability) {
    Projection proj = project(q.state, mask, value);
    QdbState s = q;
    s.state = std::move(proj.state);
    std::vector<double> w(static_cast<std::size_t>(q.descriptor.k), 0.0);
    w[static_cast<std::size_t>(f)] = 1.0;
    s.descriptor.weights = std::move(w);
    s.preparation.reset();
    s.last_circuit = s.empty_circuit();
    out.on_failure = std::move(s);
  }
  return out;
}

std::vector<GateSpec> index_transposition_gates(const std::vector<int>& index_qubits, BasisIndex a,
                                                BasisIndex b) {
  std::vector<GateSpec> out;
  const BasisIndex diff = a ^ b;
  if (diff == 0) return out;
  std::size_t p = 0;
  while (((diff >> p) & 1U) == 0) ++p;
  const int pivot = index_qubits.at(p);
  const bool b_p = (b >> p) & 1U;

  // Move b next to a (they then differ only at the pivot), swap, move back.
  std::vector<GateSpec> gather;
  for (std::size_t i = 0; i < index_qubits.size(); ++i) {
    if (i == p || ((diff >> i) & 1U) == 0) continue;
    GateSpec g = gates::x(index_qubits[i]);
    if (b_p) {
      g.ctrl(pivot);
    } else {
      g.nctrl(pivot);
    }
    gather.push_back(g);
  }
  out = gather;
  GateSpec flip = gates::x(pivot);
  for (std::size_t i = 0; i < index_qubits.size(); ++i) {
    if (i == p) continue;
    if ((a >> i) & 1U) {
      flip.ctrl(index_qubits[i]);
    } else {
      flip.nctrl(index_qubits[i]);
    }
  }
  out.push_back(flip);
  for (auto it = gather.rbegin(); it != gather.rend(); ++it) out.push_back(*it);
  return out;
}

std::vector<GateSpec> zero_state_phase(const std::vector<int>& qubits, double phi) {
  if (qubits.empty()) return {};
  GateSpec g = gates::phase(qubits[0], phi);
  for (std::size_t i = 1; i < qubits.size(); ++i) g.nctrl(qubits[i]);
  return {gates::x(qubits[0]), g, gates::x(qubits[0])};
}

QdbState permute(QdbState q, const Permutation& pi) {
  check_usable(q, "permute");
  if (pi.size() != q.descriptor.k) {
    fail(ErrorKind::kInvalidArgument, "permutation size " + std::to_string(pi.size()) +
                                          " differs from k = " + std::to_string(q.descriptor.k));
  }
  Circuit c = q.empty_circuit();
  for (const auto& [i, j] : pi.transpositions()) {
    for (const GateSpec& g :
         index_transposition_gates(q.layout.index_qubits, q.layout.physical_index(i), q.layout.physical_index(j))) {
      c.append(g);
    }
  }
  apply_recorded(q, c);

  QdbDescriptor& d = q.descriptor;
  const std::vector<double> before = d.probabilities();
  std::map<int, std::uint64_t> data;
  for (const auto& [j, v] : d.data) data[pi(j)] = v;
  d.data = std::move(data);
  std::set<int> removed;
  for (int j : d.removed) removed.insert(pi(j));
  d.removed = std::move(removed);
  std::set<int> copied;
  for (int j : q.copied) copied.insert(pi(j));
  q.copied = std::move(copied);
  if (d.weights || (d.l > 0 && pi(0) != 0)) {
    std::vector<double> w(before.size());
    for (int j = 0; j < d.k; ++j) w[static_cast<std::size_t>(pi(j))] = before[static_cast<std::size_t>(j)];
    d.weights = std::move(w);
  }
  return q;
}

QdbState transpose(QdbState q, int i, int j) {
  const Permutation pi = Permutation::transposition(q.descriptor.k, i, j);
  return permute(std::move(q), pi);
}

void apply_recorded(QdbState& q, const Circuit& circuit) {
  if (circuit.n_qubits() != q.state.n_qubits()) {
    fail(ErrorKind::kInvalidArgument, "recorded circuit width differs from the state");
  }
  run(circuit, q.state);
  if (q.preparation) {
    q.preparation->widen(circuit.n_qubits());
    relabel(*q.preparation, q.layout);
    q.preparation->append(circuit);
  }
  q.last_circuit = circuit;
  relabel(q.last_circuit, q.layout);
}

std::vector<int> allocate_qubits(QdbState& q, std::vector<int> QdbLayout::*reg, int count) {
  const int first = q.state.n_qubits();
  q.state = add_ancillas(q.state, count);
  std::vector<int> added;
  for (int i = 0; i < count; ++i) {
    (q.layout.*reg).push_back(first + i);
    added.push_back(first + i);
  }
  if (q.preparation) {
    q.preparation->widen(first + count);
    relabel(*q.preparation, q.layout);
  }
  return added;
}

}  // namespace qdb
