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

#include "qdb/common.hpp"

#include <atomic>
#include <bit>

namespace qdb {
namespace {
std::atomic<int> g_max_qubits{26};
}  // namespace

int max_qubits() { return g_max_qubits.load(); }

void set_max_qubits(int n) {
  if (n < 1 || n > 40) fail(ErrorKind::kInvalidArgument, "max qubits must lie in [1, 40]");
  g_max_qubits.store(n);
}

int ceil_log2(std::uint64_t count) {
  if (count <= 1) return 0;
  return 64 - std::countl_zero(count - 1);
}

bool is_power_of_two(std::uint64_t v) { return std::has_single_bit(v); }

BasisIndex scatter_bits(BasisIndex value, const std::vector<int>& qubits) {
  BasisIndex out = 0;
  for (std::size_t i = 0; i < qubits.size(); ++i) {
    if ((value >> i) & 1U) out |= bit(qubits[i]);
  }
  return out;
}

BasisIndex gather_bits(BasisIndex index, const std::vector<int>& qubits) {
  BasisIndex out = 0;
  for (std::size_t i = 0; i < qubits.size(); ++i) {
    if ((index >> qubits[i]) & 1U) out |= BasisIndex{1} << i;
  }
  return out;
}

std::string to_bitstring(std::uint64_t value, int width) {
  std::string s(static_cast<std::size_t>(width), '0');
  for (int i = 0; i < width; ++i) {
    if ((value >> i) & 1U) s[static_cast<std::size_t>(width - 1 - i)] = '1';
  }
  return s;
}

std::uint64_t parse_bitstring(const std::string& text) {
  if (text.empty() || text.size() > 63) fail(ErrorKind::kParse, "bad bitstring '" + text + "'");
  std::uint64_t v = 0;
  for (char c : text) {
    if (c != '0' && c != '1') fail(ErrorKind::kParse, "bad bitstring '" + text + "'");
    v = (v << 1) | static_cast<std::uint64_t>(c - '0');
  }
  return v;
}

}  // namespace qdb
