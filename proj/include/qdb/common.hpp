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

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qdb {

using Complex = std::complex<double>;
using BasisIndex = std::uint64_t;

/// Numerical tolerances shared by every module.
namespace tol {
inline constexpr double kNorm = 1e-10;
inline constexpr double kStateEquality = 1e-9;
inline constexpr double kSchmidtRank = 1e-9;
inline constexpr double kZeroProbability = 1e-14;
inline constexpr double kDumpMagnitude = 1e-12;
}  // namespace tol

/// Failure categories. The CLI maps them onto its exit codes.
enum class ErrorKind {
  kInvalidArgument,  // malformed gate, out-of-range qubit, bad permutation
  kSemantic,         // operation not allowed on this database
  kCapacity,         // qubit cap or index capacity exceeded
  kZeroProbability,  // projection onto an unoccupied subspace
  kConvergence,      // numerical solver failed
  kParse,            // text input could not be parsed
  kVerification,     // a self-check did not hold
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

/// Maximum simulated qubit count (default 26). Process-wide; set once at startup.
int max_qubits();
void set_max_qubits(int n);

inline BasisIndex bit(int q) { return BasisIndex{1} << q; }

/// Number of bits needed to address `count` values, i.e. ceil(log2(count)); 0 for count <= 1.
int ceil_log2(std::uint64_t count);
bool is_power_of_two(std::uint64_t v);

/// Places bit i of `value` at qubit position `qubits[i]`.
BasisIndex scatter_bits(BasisIndex value, const std::vector<int>& qubits);
/// Inverse of scatter_bits: reads qubit `qubits[i]` of `index` into bit i.
BasisIndex gather_bits(BasisIndex index, const std::vector<int>& qubits);

/// Bitstring text is most-significant bit first ("10" has bit 1 set).
std::string to_bitstring(std::uint64_t value, int width);
std::uint64_t parse_bitstring(const std::string& text);

}  // namespace qdb
