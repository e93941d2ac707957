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

#include <span>
#include <vector>

#include "qdb/common.hpp"

namespace qdb {

/// Dense amplitude vector over n qubits. Qubit 0 is the least significant bit of
/// the basis index. A default-constructed state is |0...0>.
class StateVector {
 public:
  explicit StateVector(int n_qubits = 0);

  static StateVector basis(int n_qubits, BasisIndex index);
  /// Throws unless the size is a power of two and the norm is 1 within `norm_tol`.
  static StateVector from_amplitudes(std::vector<Complex> amplitudes,
                                     double norm_tol = tol::kNorm);

  int n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return amplitudes_.size(); }

  std::span<const Complex> amplitudes() const { return amplitudes_; }
  std::span<Complex> mutable_amplitudes() { return amplitudes_; }
  const Complex& operator[](BasisIndex i) const { return amplitudes_[i]; }
  Complex& operator[](BasisIndex i) { return amplitudes_[i]; }

  double norm_squared() const;
  void normalize();

  friend bool operator==(const StateVector&, const StateVector&) = default;

 private:
  StateVector(int n_qubits, std::vector<Complex> amplitudes);

  int n_qubits_;
  std::vector<Complex> amplitudes_;
};

}  // namespace qdb
