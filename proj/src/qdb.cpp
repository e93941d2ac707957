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

#include "qdb/qdb.hpp"

#include <algorithm>
#include <cmath>

namespace qdb {

std::uint64_t QdbDescriptor::value(int j) const {
  const auto it = data.find(j);
  return it == data.end() ? 0 : it->second;
}

int QdbDescriptor::live_count() const { return k - static_cast<int>(removed.size()); }

double QdbDescriptor::probability(int j) const {
  if (j < 0 || j >= k) return 0.0;
  if (weights) return (*weights)[static_cast<std::size_t>(j)];
  if (removed.contains(j)) return 0.0;
  double total = 0.0;
  for (int i = 0; i < k; ++i) {
    if (!removed.contains(i)) total += i == 0 ? l + 1 : 1;
  }
  return (j == 0 ? l + 1 : 1) / total;
}

std::vector<double> QdbDescriptor::probabilities() const {
  std::vector<double> p(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j) p[static_cast<std::size_t>(j)] = probability(j);
  return p;
}

bool QdbDescriptor::balanced() const {
  double ref = -1.0;
  for (int j = 0; j < k; ++j) {
    const double p = probability(j);
    if (p <= 0.0) continue;
    if (ref < 0.0) ref = p;
    if (std::abs(p - ref) > 1e-12) return false;
  }
  return true;
}

void validate(const QdbDescriptor& d) {
  const auto bad = [](const std::string& why) { fail(ErrorKind::kInvalidArgument, "descriptor: " + why); };
  if (d.k < 1) bad("k must be at least 1");
  if (d.l < 0) bad("l must be non-negative");
  if (d.data_width < 0 || d.data_width > 62) bad("data width out of range");
  for (const auto& [j, v] : d.data) {
    if (j < 0 || j >= d.k) bad("data index " + std::to_string(j) + " outside [0, k)");
    if (d.data_width < 64 && v >= (std::uint64_t{1} << d.data_width)) {
      bad("data value at " + std::to_string(j) + " wider than " + std::to_string(d.data_width) + " bits");
    }
  }
  for (int j : d.removed) {
    if (j < 0 || j >= d.k) bad("removed index outside [0, k)");
  }
  if (static_cast<int>(d.removed.size()) >= d.k && !d.weights) bad("every entry removed");
  if (d.u_d && d.u_d->n_qubits() != d.data_width) bad("u_d width differs from the data width");
  if (d.weights) {
    if (d.weights->size() != static_cast<std::size_t>(d.k)) bad("weights need one value per entry");
    double total = 0.0;
    for (double w : *d.weights) {
      if (!(w >= 0.0)) bad("negative weight");
      total += w;
    }
    if (std::abs(total - 1.0) > 1e-9) bad("weights do not sum to 1");
  }
}

int QdbLayout::n_qubits() const {
  return static_cast<int>(index_qubits.size() + data_qubits.size() + copy_qubits.size() +
                          sensor_qubits.size() + work_qubits.size());
}

std::vector<Register> QdbLayout::labels() const {
  std::vector<Register> out(static_cast<std::size_t>(n_qubits()), Register::kAncilla);
  for (int q : index_qubits) out[static_cast<std::size_t>(q)] = Register::kIndex;
  for (int q : data_qubits) out[static_cast<std::size_t>(q)] = Register::kData;
  for (int q : sensor_qubits) out[static_cast<std::size_t>(q)] = Register::kSensor;
  return out;
}

BasisIndex QdbLayout::basis_index(BasisIndex index_value, BasisIndex data_value) const {
  return scatter_bits(index_value, index_qubits) | scatter_bits(data_value, data_qubits);
}

BasisIndex QdbLayout::index_mask() const { return scatter_bits(~BasisIndex{0}, index_qubits); }
BasisIndex QdbLayout::data_mask() const { return scatter_bits(~BasisIndex{0}, data_qubits); }

QdbLayout default_layout(int k, int data_width) {
  QdbLayout layout;
  const int kt = ceil_log2(static_cast<std::uint64_t>(k));
  for (int q = 0; q < kt; ++q) layout.index_qubits.push_back(q);
  for (int q = 0; q < data_width; ++q) layout.data_qubits.push_back(kt + q);
  for (int j = 0; j < k; ++j) layout.logical_index_map.push_back(static_cast<BasisIndex>(j));
  return layout;
}

Circuit QdbState::empty_circuit() const {
  Circuit c(layout.n_qubits());
  const std::vector<Register> labels = layout.labels();
  for (int q = 0; q < c.n_qubits(); ++q) c.set_label(q, labels[static_cast<std::size_t>(q)]);
  return c;
}

Permutation::Permutation(std::vector<int> mapping) : map_(std::move(mapping)) {
  std::vector<bool> hit(map_.size(), false);
  for (int v : map_) {
    if (v < 0 || v >= size() || hit[static_cast<std::size_t>(v)]) {
      fail(ErrorKind::kInvalidArgument, "permutation is not a bijection on [0, " + std::to_string(size()) + ")");
    }
    hit[static_cast<std::size_t>(v)] = true;
  }
}

Permutation Permutation::identity(int k) {
  std::vector<int> m(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j) m[static_cast<std::size_t>(j)] = j;
  return Permutation(std::move(m));
}

Permutation Permutation::transposition(int k, int i, int j) {
  if (i < 0 || j < 0 || i >= k || j >= k) fail(ErrorKind::kInvalidArgument, "transposition out of range");
  Permutation p = identity(k);
  std::swap(p.map_[static_cast<std::size_t>(i)], p.map_[static_cast<std::size_t>(j)]);
  return p;
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(map_.size());
  for (int j = 0; j < size(); ++j) inv[static_cast<std::size_t>(map_[static_cast<std::size_t>(j)])] = j;
  return Permutation(std::move(inv));
}

Permutation Permutation::after(const Permutation& first) const {
  if (first.size() != size()) fail(ErrorKind::kInvalidArgument, "permutation sizes differ");
  std::vector<int> m(map_.size());
  for (int j = 0; j < size(); ++j) m[static_cast<std::size_t>(j)] = (*this)(first(j));
  return Permutation(std::move(m));
}

std::vector<std::pair<int, int>> Permutation::transpositions() const {
  // A cycle c0 -> c1 -> ... -> c(r-1) -> c0 moves its contents with the swaps
  // (c(r-2), c(r-1)), ..., (c0, c1) in that order.
  std::vector<std::pair<int, int>> out;
  std::vector<bool> seen(map_.size(), false);
  for (int start = 0; start < size(); ++start) {
    if (seen[static_cast<std::size_t>(start)]) continue;
    std::vector<int> cycle;
    for (int j = start; !seen[static_cast<std::size_t>(j)]; j = (*this)(j)) {
      seen[static_cast<std::size_t>(j)] = true;
      cycle.push_back(j);
    }
    for (std::size_t i = cycle.size(); i-- > 1;) out.emplace_back(cycle[i - 1], cycle[i]);
  }
  return out;
}

}  // namespace qdb
